#pragma once

#include "manetsim/routing/agent.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace manetsim::routing {

struct AodvParams {
    int ttl_start = 1;
    int ttl_increment = 2;
    int ttl_threshold = 7;
    int net_diameter = 30;
    double hello_interval = 1.0;
    int allowed_hello_loss = 2;
    bool local_repair = true;
    bool grat_rrep = true;

    int rreq_retries = 2;  // extra attempts at net_diameter
    double active_route_timeout = 3.0;
    double node_traversal_time = 0.04;
    double buffer_timeout = 30.0;
    std::size_t buffer_limit = 64;  // per destination

    static AodvParams def();
    /// TTL_INCREMENT 4, TTL_THRESHOLD 9, NET_DIAMETER 10; everything else as def().
    static AodvParams mod();

    friend bool operator==(const AodvParams&, const AodvParams&) = default;
};

std::vector<std::string> check(const AodvParams& p);

/// TTLs of successive route-request attempts: ttl_start, then ttl_increment
/// steps while within ttl_threshold, then net_diameter for the first try and
/// each of the rreq_retries.
std::vector<int> expanding_ring_ttls(const AodvParams& p);

/// TTL of a local-repair request: max(last hop count to the destination,
/// half the hops back to the originator) + 2.
int local_repair_ttl(int hops_to_dest, int hops_to_origin);

enum class RouteState { Valid, UnderRepair, Invalid };

struct RouteEntry {
    NodeId dest = kNoNode;
    NodeId next_hop = kNoNode;
    int hop_count = 0;
    std::uint32_t dest_seq = 0;
    bool valid_seq = false;
    double lifetime = 0.0;
    RouteState state = RouteState::Invalid;
    std::set<NodeId> precursors;
};

/// Counters useful for tests and trace reconciliation.
struct AodvStats {
    std::uint64_t rreq_originated = 0;
    std::uint64_t rrep_sent = 0;       // replies generated here (dest or intermediate)
    std::uint64_t grat_rrep_sent = 0;
    std::uint64_t rerr_sent = 0;
    std::uint64_t local_repairs = 0;
    std::uint64_t local_repairs_ok = 0;
    std::uint64_t discoveries_failed = 0;
};

class AodvAgent final : public RoutingAgent {
public:
    AodvAgent(NodeId self, AodvParams params);

    std::string_view protocol() const noexcept override { return "aodv"; }

    void start(NodeContext& ctx) override;
    void on_timer(NodeContext& ctx, std::uint64_t token) override;
    void on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& msg) override;
    void on_data(NodeContext& ctx, Packet pkt) override;
    void on_send_failure(NodeContext& ctx, NodeId next_hop, std::optional<Packet> data) override;
    std::optional<RouteView> route(NodeId dest) const override;

    const AodvParams& params() const noexcept { return params_; }
    const AodvStats& stats() const noexcept { return stats_; }
    std::uint32_t seq_no() const noexcept { return seq_; }
    const RouteEntry* entry(NodeId dest) const;
    std::size_t buffered(NodeId dest) const;

private:
    struct Buffered {
        Packet pkt;
        double enqueued = 0.0;
    };
    struct Discovery {
        std::size_t attempt = 0;
        std::uint32_t generation = 0;
        bool repair = false;
        int repair_ttl = 0;
    };

    void on_hello(NodeContext& ctx, NodeId from, const msg::AodvHello& m);
    void on_rreq(NodeContext& ctx, const Packet& pkt, const msg::Rreq& m);
    void on_rrep(NodeContext& ctx, const Packet& pkt, const msg::Rrep& m);
    void on_rerr(NodeContext& ctx, NodeId from, const msg::Rerr& m);
    void hello_tick(NodeContext& ctx);
    void discovery_timeout(NodeContext& ctx, NodeId dest, std::uint32_t generation);

    RouteEntry* valid_route(NodeId dest);
    void touch_neighbor(NodeId n, double now);
    bool update_route(NodeId dest, NodeId next_hop, int hops, std::uint32_t seq, bool valid_seq, double lifetime);
    void forward(NodeContext& ctx, RouteEntry& r, Packet pkt);
    void buffer(NodeContext& ctx, Packet pkt);
    void flush(NodeContext& ctx, NodeId dest);
    void drop_buffered(NodeContext& ctx, NodeId dest, DropReason why);
    void start_discovery(NodeContext& ctx, NodeId dest);
    void start_repair(NodeContext& ctx, NodeId dest, int ttl);
    void send_rreq(NodeContext& ctx, NodeId dest, int ttl, const Discovery& d);
    void invalidate(RouteEntry& r, double now);
    /// Invalidates every valid route through `next_hop` except `keep`, and
    /// reports the ones with precursors in one RERR.
    void break_link(NodeContext& ctx, NodeId next_hop, NodeId keep);
    void send_rerr(NodeContext& ctx, std::vector<std::pair<NodeId, std::uint32_t>> unreachable);

    NodeId self_;
    AodvParams params_;
    std::vector<int> ring_;
    std::uint32_t seq_ = 0;
    std::uint32_t rreq_id_ = 0;
    double now_ = 0.0;
    std::map<NodeId, RouteEntry> routes_;
    std::map<std::pair<NodeId, std::uint32_t>, double> seen_rreq_;
    std::map<NodeId, Discovery> discoveries_;
    std::map<NodeId, std::deque<Buffered>> buffers_;
    std::map<NodeId, double> neighbors_;
    std::uint32_t next_generation_ = 1;
    AodvStats stats_;
};

}  // namespace manetsim::routing
