#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace manetsim {

/// Counters accumulated by one run. Routing counters are per transmission:
/// a broadcast heard by several neighbors is one routing packet.
struct RunMetrics {
    std::uint64_t data_sent = 0;
    std::uint64_t data_delivered = 0;
    std::uint64_t data_dropped = 0;
    std::uint64_t data_in_flight = 0;

    std::uint64_t routing_packets = 0;
    std::uint64_t routing_delivered = 0;
    std::uint64_t routing_dropped = 0;
    std::uint64_t routing_in_flight = 0;
    std::uint64_t routing_bytes = 0;

    std::uint64_t mac_unicast_failures = 0;

    double latency_sum = 0.0;
    std::vector<double> latencies;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Delivered over sent, in percent.
double pdr(const RunMetrics& m);
/// Mean end-to-end latency of delivered packets, seconds.
double e2ed(const RunMetrics& m);
/// Routing transmissions per delivered data packet.
double nro(const RunMetrics& m);

/// One CSV row of a sweep.
struct ResultRow {
    std::string protocol;  // aodv | fsr | olsr
    std::string preset;    // def | mod
    std::string net_type;  // manet | vanet
    int nodes = 0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

inline constexpr std::string_view kCsvHeader =
    "protocol,preset,net_type,nodes,seed,pdr,e2ed_s,nro,data_sent,data_delivered,routing_pkts";

/// Undefined metrics are written as empty fields.
std::string csv_row(const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace manetsim
