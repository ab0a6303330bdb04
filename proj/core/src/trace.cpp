#include "manetsim/trace.hpp"

#include <fmt/format.h>

#include <iterator>
#include <ostream>

namespace manetsim {

std::string_view to_string(TraceKind k) noexcept {
    switch (k) {
        case TraceKind::Send: return "SEND";
        case TraceKind::TxData: return "TX_DATA";
        case TraceKind::RxData: return "RX_DATA";
        case TraceKind::Deliver: return "DELIVER";
        case TraceKind::DropData: return "DROP_DATA";
        case TraceKind::TxRouting: return "TX_RT";
        case TraceKind::RxRouting: return "RX_RT";
        case TraceKind::DropRouting: return "DROP_RT";
    }
    return "?";
}

void TraceWriter::record(double t, TraceKind kind, NodeId node, const Packet& pkt) {
    if (!out_) return;
    line_.clear();
    fmt::format_to(std::back_inserter(line_), "{:.6f} {} {} {} {} {} {} {}\n", t, to_string(kind), node, pkt.src, pkt.dst,
                   pkt.id, pkt.size, pkt.ttl);
    out_->write(line_.data(), static_cast<std::streamsize>(line_.size()));
}

}  // namespace manetsim
