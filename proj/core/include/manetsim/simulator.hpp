#pragma once

#include "manetsim/event_queue.hpp"
#include "manetsim/linkmath.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/radio.hpp"
#include "manetsim/routing/agent.hpp"
#include "manetsim/trace.hpp"
#include "manetsim/traffic.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

namespace manetsim {

/// Everything a run needs, already resolved to concrete values.
struct SimSetup {
    std::vector<mobility::Trajectory> trajectories;  // index = node id
    RadioConfig radio;
    std::vector<FlowConfig> flows;
    double horizon = 900.0;
    std::uint64_t seed = 1;
    routing::AgentFactory make_agent;
    std::ostream* trace = nullptr;  // optional trace sink
};

/// Connectivity is re-evaluated on this grid (seconds).
inline constexpr double kMobilitySampleStep = 0.1;

/// Single-threaded discrete-event engine. Identical setups produce identical
/// event sequences, traces and metrics.
class Simulator {
public:
    /// Throws ConfigError for an unusable setup (fewer than two nodes,
    /// bad radio or flow parameters, missing agent factory).
    explicit Simulator(SimSetup setup);
    ~Simulator();

    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    /// Processes every event with time <= t (capped at the horizon).
    void run_until(double t);
    /// Runs to the horizon and returns the final counters.
    const RunMetrics& run();

    double now() const noexcept { return now_; }
    double horizon() const noexcept { return setup_.horizon; }
    int node_count() const noexcept { return static_cast<int>(setup_.trajectories.size()); }
    const RadioConfig& radio() const noexcept { return setup_.radio; }

    /// Counters so far; in-flight fields are current.
    RunMetrics metrics() const;

    routing::RoutingAgent& agent(NodeId node);
    const routing::RoutingAgent& agent(NodeId node) const;

    /// Exact interpolated position.
    Vec2 position(NodeId node, double t) const;
    /// Neighbors on the connectivity grid point at or before t, ascending.
    std::vector<NodeId> neighbors(NodeId node, double t);

    /// Schedules one application packet outside the configured flows.
    void inject_data(NodeId src, NodeId dst, double at, std::uint32_t size = 1000);

    /// Link forecast for the pair at the current time, built from three
    /// exact distance samples `spacing` seconds apart ending now.
    linkmath::SeriesForecast forecast_link(NodeId a, NodeId b, double spacing, double lookahead) const;

private:
    class Context;
    friend class Context;

    struct PendingTx {
        std::uint32_t remaining = 0;
        bool any_received = false;
        NodeId sender = kNoNode;
        Packet packet;
    };

    void refresh_connectivity(double t);
    void schedule(double t, EventPayload payload);
    void dispatch(Event& e);
    void handle(ev::PacketRx& e);
    void handle(ev::TimerFire& e);
    void handle(ev::TrafficSend& e);
    void handle(ev::TxFailed& e);

    void transmit(NodeId from, NodeId next_hop, Packet pkt);
    void originate(NodeId src, NodeId dst, std::uint32_t size, std::uint32_t flow);
    void deliver(NodeId node, Packet pkt);
    void drop_data(NodeId node, Packet pkt, DropReason why);
    void resolve_routing(std::uint64_t tx_id, NodeId sender);

    SimSetup setup_;
    EventQueue queue_;
    TraceWriter trace_;
    std::vector<std::unique_ptr<routing::RoutingAgent>> agents_;
    std::vector<mobility::Cursor> cursors_;
    std::vector<Vec2> sampled_pos_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::int64_t sample_index_ = -1;

    double now_ = 0.0;
    bool started_ = false;
    RunMetrics metrics_;
    std::set<PacketId> live_data_;
    std::unordered_map<std::uint64_t, PendingTx> pending_tx_;
    std::map<std::pair<NodeId, std::size_t>, std::uint64_t> control_counter_;
    PacketId next_data_id_ = 1;
    std::uint64_t next_tx_id_ = 1;
    std::uint32_t configured_flows_ = 0;  // flows after these are one-off injections
};

}  // namespace manetsim
