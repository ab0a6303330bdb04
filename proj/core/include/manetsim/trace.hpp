#pragma once

#include "manetsim/packet.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace manetsim {

// Trace rows: `t kind node src dst pkt_id size ttl`, time with 6 decimals,
// single spaces, broadcast destination written as -1.
//
//   SEND      data packet handed down by the application at `node`
//   TX_DATA   data transmission by `node`
//   RX_DATA   data reception at `node`
//   DELIVER   data reached its destination `node`
//   DROP_DATA data packet discarded at `node`
//   TX_RT     routing transmission by `node`
//   RX_RT     routing reception at `node`
//   DROP_RT   routing transmission that reached no receiver; `node` is the sender
enum class TraceKind { Send, TxData, RxData, Deliver, DropData, TxRouting, RxRouting, DropRouting };

std::string_view to_string(TraceKind k) noexcept;

class TraceWriter {
public:
    TraceWriter() = default;
    explicit TraceWriter(std::ostream* out) : out_(out) {}

    bool enabled() const noexcept { return out_ != nullptr; }
    void record(double t, TraceKind kind, NodeId node, const Packet& pkt);

private:
    std::ostream* out_ = nullptr;
    std::string line_;
};

}  // namespace manetsim
