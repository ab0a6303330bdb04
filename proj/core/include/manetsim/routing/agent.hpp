#pragma once

#include "manetsim/packet.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

namespace manetsim::routing {

/// What an agent may do to the world. Implemented by the simulator for the
/// node the agent runs on; tests substitute a recording fake.
class NodeContext {
public:
    virtual ~NodeContext() = default;

    virtual NodeId self() const = 0;
    virtual double now() const = 0;

    /// Transmits a control message to one neighbor or kBroadcast.
    virtual void send_control(NodeId next_hop, NodeId dst, ControlMessage msg, int ttl) = 0;
    /// Hands a data packet to the MAC toward `next_hop`.
    virtual void send_data(NodeId next_hop, Packet pkt) = 0;
    virtual void drop(Packet pkt, DropReason why) = 0;
    /// Fires on_timer(token) after `delay` seconds.
    virtual void set_timer(double delay, std::uint64_t token) = 0;
};

struct RouteView {
    NodeId next_hop = kNoNode;
    int hops = 0;

    friend bool operator==(const RouteView&, const RouteView&) = default;
};

class RoutingAgent {
public:
    virtual ~RoutingAgent() = default;

    virtual std::string_view protocol() const noexcept = 0;

    virtual void start(NodeContext& ctx) = 0;
    virtual void on_timer(NodeContext& ctx, std::uint64_t token) = 0;
    virtual void on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& msg) = 0;
    /// Data originated by the local application (pkt.prev_hop == kNoNode)
    /// or received for forwarding. Every packet must end in send_data or drop,
    /// or stay in an agent buffer that eventually does one of the two.
    virtual void on_data(NodeContext& ctx, Packet pkt) = 0;
    /// Link-layer failure toward `next_hop`; data packets are handed back.
    virtual void on_send_failure(NodeContext& ctx, NodeId next_hop, std::optional<Packet> data) = 0;

    /// Current usable route, if any.
    virtual std::optional<RouteView> route(NodeId dest) const = 0;
};

using AgentFactory = std::function<std::unique_ptr<RoutingAgent>(NodeId)>;

}  // namespace manetsim::routing
