#include "manetsim/routing/fsr.hpp"

#include "manetsim/routing/graph.hpp"

#include <cmath>
#include <set>

namespace manetsim::routing {

namespace {

constexpr std::uint64_t kIntraTimer = 1;
constexpr std::uint64_t kInterTimer = 2;

}  // namespace

FsrParams FsrParams::def() {
    return FsrParams{};
}

FsrParams FsrParams::mod() {
    FsrParams p;
    p.intra_scope_interval = 1.0;
    p.inter_scope_interval = 3.0;
    return p;
}

std::vector<std::string> check(const FsrParams& p) {
    std::vector<std::string> problems;
    if (!(p.intra_scope_interval > 0.0)) problems.emplace_back("fsr intra_scope_interval must be > 0");
    if (!(p.inter_scope_interval >= p.intra_scope_interval))
        problems.emplace_back("fsr intra_scope_interval must be <= inter_scope_interval");
    if (p.scope_radius < 1) problems.emplace_back("fsr scope_radius must be >= 1");
    if (!(p.neighbor_hold_factor > 0.0) || !(p.entry_hold_factor > 0.0))
        problems.emplace_back("fsr hold factors must be > 0");
    return problems;
}

FsrAgent::FsrAgent(NodeId self, FsrParams params) : self_(self), params_(params) {
    if (auto problems = check(params_); !problems.empty()) throw ConfigError(std::move(problems));
}

void FsrAgent::start(NodeContext& ctx) {
    now_ = ctx.now();
    ctx.set_timer(params_.intra_scope_interval, kIntraTimer);
    ctx.set_timer(params_.inter_scope_interval, kInterTimer);
}

void FsrAgent::on_timer(NodeContext& ctx, std::uint64_t token) {
    now_ = ctx.now();
    // Timers run on absolute multiples of their interval so cadence does not drift.
    if (token == kIntraTimer) {
        ++intra_ticks_;
        ++stats_.update_firings;
        // The full update due at the same instant supersedes this one, whichever timer fires first.
        const double full_index = std::round(now_ / params_.inter_scope_interval);
        if (full_index < 1.0 || std::abs(full_index * params_.inter_scope_interval - now_) > 1e-9)
            send_update(ctx, false);
        ctx.set_timer(static_cast<double>(intra_ticks_ + 1) * params_.intra_scope_interval - now_, kIntraTimer);
    } else if (token == kInterTimer) {
        ++inter_ticks_;
        send_update(ctx, true);
        ctx.set_timer(static_cast<double>(inter_ticks_ + 1) * params_.inter_scope_interval - now_, kInterTimer);
    }
}

void FsrAgent::expire(double now) {
    const double neighbor_hold = params_.neighbor_hold_factor * params_.intra_scope_interval;
    const double entry_hold = params_.entry_hold_factor * params_.inter_scope_interval;
    const auto before = neighbors_.size() + topology_.size();
    std::erase_if(neighbors_, [&](const auto& kv) { return now - kv.second > neighbor_hold; });
    std::erase_if(topology_, [&](const auto& kv) { return now - kv.second.received > entry_hold; });
    if (neighbors_.size() + topology_.size() != before) dirty_ = true;
}

void FsrAgent::recompute() const {
    if (!dirty_) return;
    Adjacency adj;
    auto& own = adj[self_];
    for (const auto& [n, heard] : neighbors_) own.insert(n);
    for (const auto& [origin, e] : topology_) {
        auto& out = adj[origin];
        out.insert(e.neighbors.begin(), e.neighbors.end());
    }
    routes_ = shortest_path_routes(self_, adj);
    dirty_ = false;
}

std::map<NodeId, RouteView> FsrAgent::routes() const {
    recompute();
    return routes_;
}

std::optional<RouteView> FsrAgent::route(NodeId dest) const {
    recompute();
    auto it = routes_.find(dest);
    if (it == routes_.end()) return std::nullopt;
    return it->second;
}

msg::FsrUpdate FsrAgent::build_update(bool full, double now) {
    now_ = now;
    expire(now);
    recompute();
    msg::FsrUpdate u;
    u.full = full;
    msg::FsrEntry own{self_, seq_, {}};
    for (const auto& [n, heard] : neighbors_) own.neighbors.push_back(n);
    u.entries.push_back(std::move(own));
    for (const auto& [origin, e] : topology_) {
        if (!full) {
            auto r = routes_.find(origin);
            if (r == routes_.end() || r->second.hops > params_.scope_radius) continue;
        }
        u.entries.push_back({origin, e.seq, e.neighbors});
    }
    return u;
}

void FsrAgent::send_update(NodeContext& ctx, bool full) {
    ++seq_;
    if (deferred_) {
        dirty_ = true;
        deferred_ = false;
    }
    auto u = build_update(full, ctx.now());
    if (full)
        ++stats_.full_updates;
    else
        ++stats_.scoped_updates;
    ctx.send_control(kBroadcast, kBroadcast, std::move(u), 1);
}

std::optional<std::size_t> FsrAgent::apply_update(const msg::FsrUpdate& update, NodeId from, double now) {
    now_ = now;
    std::set<NodeId> origins;
    for (const auto& e : update.entries) {
        bool bad = e.origin < 0 || !origins.insert(e.origin).second;
        for (NodeId n : e.neighbors) bad = bad || n < 0 || n == e.origin;
        if (bad) {
            ++stats_.malformed;
            return std::nullopt;
        }
    }
    if (from < 0 || from == self_) {
        ++stats_.malformed;
        return std::nullopt;
    }

    if (!neighbors_.contains(from)) dirty_ = true;
    neighbors_[from] = now;
    std::size_t changed = 0;
    for (const auto& e : update.entries) {
        if (e.origin == self_) continue;
        auto it = topology_.find(e.origin);
        if (it != topology_.end() && static_cast<std::int32_t>(e.seq - it->second.seq) <= 0) {
            if (e.seq != it->second.seq) ++stats_.stale_entries;
            continue;
        }
        Entry& slot = topology_[e.origin];
        if (slot.neighbors != e.neighbors) dirty_ = true;
        slot.seq = e.seq;
        slot.neighbors = e.neighbors;
        slot.received = now;
        ++changed;
    }
    return changed;
}

void FsrAgent::on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& m) {
    now_ = ctx.now();
    if (const auto* u = std::get_if<msg::FsrUpdate>(&m)) {
        const bool was_dirty = dirty_;
        apply_update(*u, pkt.prev_hop, now_);
        if (!params_.recompute_on_update && !was_dirty && dirty_) {
            // The table is rebuilt when this node next sends an update.
            deferred_ = true;
            dirty_ = false;
        }
    }
}

void FsrAgent::on_data(NodeContext& ctx, Packet pkt) {
    now_ = ctx.now();
    if (auto r = route(pkt.dst)) {
        ctx.send_data(r->next_hop, std::move(pkt));
        return;
    }
    ctx.drop(std::move(pkt), DropReason::NoRoute);
}

void FsrAgent::on_send_failure(NodeContext& ctx, NodeId, std::optional<Packet> data) {
    if (data) ctx.drop(std::move(*data), DropReason::LinkBreak);
}

}  // namespace manetsim::routing
