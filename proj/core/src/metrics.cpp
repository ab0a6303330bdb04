#include "manetsim/metrics.hpp"

#include <fmt/format.h>

#include <ostream>

namespace manetsim {

double pdr(const RunMetrics& m) {
    if (m.data_sent == 0) throw UndefinedMetric("PDR undefined: no data packets sent");
    return 100.0 * static_cast<double>(m.data_delivered) / static_cast<double>(m.data_sent);
}

double e2ed(const RunMetrics& m) {
    if (m.data_delivered == 0) throw UndefinedMetric("E2ED undefined: no data packets delivered");
    return m.latency_sum / static_cast<double>(m.data_delivered);
}

double nro(const RunMetrics& m) {
    if (m.data_delivered == 0) throw UndefinedMetric("NRO undefined: no data packets delivered");
    return static_cast<double>(m.routing_packets) / static_cast<double>(m.data_delivered);
}

namespace {

template <class F>
std::string field(F&& metric, const RunMetrics& m) {
    try {
        return fmt::format("{:.6f}", metric(m));
    } catch (const UndefinedMetric&) {
        return {};
    }
}

}  // namespace

std::string csv_row(const ResultRow& row) {
    const auto& m = row.metrics;
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", row.protocol, row.preset, row.net_type, row.nodes, row.seed,
                       field(pdr, m), field(e2ed, m), field(nro, m), m.data_sent, m.data_delivered, m.routing_packets);
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
}

}  // namespace manetsim
