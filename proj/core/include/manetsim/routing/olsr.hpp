#pragma once

#include "manetsim/routing/agent.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace manetsim::routing {

struct OlsrParams {
    double hello_interval = 2.0;
    double tc_interval = 5.0;
    double hold_time_multiplier = 3.0;

    static OlsrParams def();
    /// HELLO 1 s, TC 3 s.
    static OlsrParams mod();

    friend bool operator==(const OlsrParams&, const OlsrParams&) = default;
};

std::vector<std::string> check(const OlsrParams& p);

/// Greedy multipoint-relay selection. `coverage` maps each 1-hop neighbor to
/// the nodes it reaches; nodes in `one_hop` are not counted as 2-hop. First
/// every neighbor that is the only way to some 2-hop node is taken, then the
/// neighbor covering the most still-uncovered nodes (lowest id on ties).
std::set<NodeId> select_mprs(const std::set<NodeId>& one_hop, const std::map<NodeId, std::set<NodeId>>& coverage);

struct OlsrStats {
    std::uint64_t hellos_sent = 0;
    std::uint64_t tcs_originated = 0;
    std::uint64_t tcs_forwarded = 0;
    std::uint64_t tcs_duplicate = 0;
    std::uint64_t tcs_stale = 0;
};

class OlsrAgent final : public RoutingAgent {
public:
    OlsrAgent(NodeId self, OlsrParams params);

    std::string_view protocol() const noexcept override { return "olsr"; }

    void start(NodeContext& ctx) override;
    void on_timer(NodeContext& ctx, std::uint64_t token) override;
    void on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& msg) override;
    void on_data(NodeContext& ctx, Packet pkt) override;
    void on_send_failure(NodeContext& ctx, NodeId next_hop, std::optional<Packet> data) override;
    std::optional<RouteView> route(NodeId dest) const override;

    msg::OlsrHello build_hello(double now);

    const OlsrParams& params() const noexcept { return params_; }
    const OlsrStats& stats() const noexcept { return stats_; }
    std::set<NodeId> symmetric_neighbors(double now) const;
    /// Strict 2-hop neighbors with the 1-hop neighbors that reach them.
    std::map<NodeId, std::set<NodeId>> two_hop(double now) const;
    const std::set<NodeId>& mprs() const noexcept { return mprs_; }
    std::set<NodeId> mpr_selectors(double now) const;
    std::map<NodeId, RouteView> routes() const;

private:
    struct Link {
        double heard_until = 0.0;
        double sym_until = 0.0;
        std::set<NodeId> reaches;  // symmetric neighbors the neighbor advertised
    };
    struct Topology {
        std::uint32_t ansn = 0;
        std::set<NodeId> selectors;
        double until = 0.0;
    };

    void on_hello(NodeId from, const msg::OlsrHello& m);
    void on_tc(NodeContext& ctx, const Packet& pkt, const msg::OlsrTc& m);
    void emit_hello(NodeContext& ctx);
    void emit_tc(NodeContext& ctx);
    void expire(double now);
    void recompute() const;

    NodeId self_;
    OlsrParams params_;
    double now_ = 0.0;
    std::uint64_t hello_ticks_ = 0;
    std::uint64_t tc_ticks_ = 0;
    std::uint32_t ansn_ = 0;
    std::uint32_t msg_seq_ = 0;
    std::set<NodeId> last_selectors_;
    std::map<NodeId, Link> links_;
    std::map<NodeId, double> selectors_;
    std::set<NodeId> mprs_;
    std::map<NodeId, Topology> topology_;
    std::map<std::pair<NodeId, std::uint32_t>, double> seen_;
    mutable std::map<NodeId, RouteView> routes_;
    mutable bool dirty_ = true;
    std::size_t sym_count_ = 0;
    OlsrStats stats_;
};

}  // namespace manetsim::routing
