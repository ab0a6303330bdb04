#pragma once

#include "manetsim/routing/agent.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace manetsim::routing {

struct FsrParams {
    double intra_scope_interval = 5.0;
    double inter_scope_interval = 15.0;
    int scope_radius = 2;
    bool recompute_on_update = true;
    /// A neighbor is dropped after this many intra-scope intervals of silence.
    double neighbor_hold_factor = 3.0;
    /// A topology entry is dropped after this many inter-scope intervals without a newer copy.
    double entry_hold_factor = 3.0;

    static FsrParams def();
    /// Intra-scope 1 s, inter-scope 3 s.
    static FsrParams mod();

    friend bool operator==(const FsrParams&, const FsrParams&) = default;
};

std::vector<std::string> check(const FsrParams& p);

struct FsrStats {
    std::uint64_t update_firings = 0;  // intra-scope timer expirations
    std::uint64_t scoped_updates = 0;  // scoped broadcasts actually sent
    std::uint64_t full_updates = 0;
    std::uint64_t malformed = 0;
    std::uint64_t stale_entries = 0;
};

/// Fisheye link-state agent. Each node periodically broadcasts link-state
/// entries to its one-hop neighbors: the entries of origins within
/// scope_radius hops every intra-scope interval, the whole table every
/// inter-scope interval. Updates are never re-flooded.
class FsrAgent final : public RoutingAgent {
public:
    FsrAgent(NodeId self, FsrParams params);

    std::string_view protocol() const noexcept override { return "fsr"; }

    void start(NodeContext& ctx) override;
    void on_timer(NodeContext& ctx, std::uint64_t token) override;
    void on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& msg) override;
    void on_data(NodeContext& ctx, Packet pkt) override;
    void on_send_failure(NodeContext& ctx, NodeId next_hop, std::optional<Packet> data) override;
    std::optional<RouteView> route(NodeId dest) const override;

    /// Payload this node would broadcast now. Scoped payloads carry the own
    /// entry plus entries of origins within scope_radius hops.
    msg::FsrUpdate build_update(bool full, double now);

    /// Merges an update heard from `from`; returns the number of entries
    /// replaced, or nullopt for a malformed payload (no state change).
    std::optional<std::size_t> apply_update(const msg::FsrUpdate& update, NodeId from, double now);

    const FsrParams& params() const noexcept { return params_; }
    const FsrStats& stats() const noexcept { return stats_; }
    std::map<NodeId, RouteView> routes() const;

private:
    struct Entry {
        std::uint32_t seq = 0;
        std::vector<NodeId> neighbors;
        double received = 0.0;
    };

    void expire(double now);
    void recompute() const;
    void send_update(NodeContext& ctx, bool full);

    NodeId self_;
    FsrParams params_;
    std::uint32_t seq_ = 0;
    std::uint64_t intra_ticks_ = 0;
    std::uint64_t inter_ticks_ = 0;
    double now_ = 0.0;
    std::map<NodeId, double> neighbors_;
    std::map<NodeId, Entry> topology_;
    mutable std::map<NodeId, RouteView> routes_;
    mutable bool dirty_ = true;
    bool deferred_ = false;
    FsrStats stats_;
};

}  // namespace manetsim::routing
