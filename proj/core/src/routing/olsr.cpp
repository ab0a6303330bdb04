#include "manetsim/routing/olsr.hpp"

#include "manetsim/routing/graph.hpp"

#include <algorithm>

namespace manetsim::routing {

namespace {

constexpr std::uint64_t kHelloTimer = 1;
constexpr std::uint64_t kTcTimer = 2;
constexpr int kTcTtl = 255;

}  // namespace

OlsrParams OlsrParams::def() {
    return OlsrParams{};
}

OlsrParams OlsrParams::mod() {
    OlsrParams p;
    p.hello_interval = 1.0;
    p.tc_interval = 3.0;
    return p;
}

std::vector<std::string> check(const OlsrParams& p) {
    std::vector<std::string> problems;
    if (!(p.hello_interval > 0.0)) problems.emplace_back("olsr hello_interval must be > 0");
    if (!(p.tc_interval > 0.0)) problems.emplace_back("olsr tc_interval must be > 0");
    if (!(p.hold_time_multiplier >= 3.0)) problems.emplace_back("olsr hold_time_multiplier must be >= 3");
    return problems;
}

std::set<NodeId> select_mprs(const std::set<NodeId>& one_hop, const std::map<NodeId, std::set<NodeId>>& coverage) {
    std::map<NodeId, std::set<NodeId>> cover;  // 1-hop -> strict 2-hop nodes it reaches
    std::map<NodeId, int> reached_by;
    for (const auto& [n, reach] : coverage) {
        if (!one_hop.contains(n)) continue;
        auto& c = cover[n];
        for (NodeId y : reach) {
            if (one_hop.contains(y)) continue;
            if (c.insert(y).second) ++reached_by[y];
        }
    }

    std::set<NodeId> mprs;
    for (const auto& [n, c] : cover)
        for (NodeId y : c)
            if (reached_by[y] == 1) mprs.insert(n);

    std::set<NodeId> uncovered;
    for (const auto& [y, count] : reached_by) uncovered.insert(y);
    for (NodeId m : mprs)
        for (NodeId y : cover[m]) uncovered.erase(y);

    while (!uncovered.empty()) {
        NodeId best = kNoNode;
        std::size_t best_gain = 0;
        for (const auto& [n, c] : cover) {
            if (mprs.contains(n)) continue;
            const auto gain = static_cast<std::size_t>(
                std::count_if(c.begin(), c.end(), [&](NodeId y) { return uncovered.contains(y); }));
            if (gain > best_gain) {
                best = n;
                best_gain = gain;
            }
        }
        mprs.insert(best);
        for (NodeId y : cover[best]) uncovered.erase(y);
    }
    return mprs;
}

OlsrAgent::OlsrAgent(NodeId self, OlsrParams params) : self_(self), params_(params) {
    if (auto problems = check(params_); !problems.empty()) throw ConfigError(std::move(problems));
}

void OlsrAgent::start(NodeContext& ctx) {
    now_ = ctx.now();
    ctx.set_timer(params_.hello_interval, kHelloTimer);
    ctx.set_timer(params_.tc_interval, kTcTimer);
}

void OlsrAgent::on_timer(NodeContext& ctx, std::uint64_t token) {
    now_ = ctx.now();
    if (token == kHelloTimer) {
        ++hello_ticks_;
        emit_hello(ctx);
        ctx.set_timer(static_cast<double>(hello_ticks_ + 1) * params_.hello_interval - now_, kHelloTimer);
    } else if (token == kTcTimer) {
        ++tc_ticks_;
        emit_tc(ctx);
        ctx.set_timer(static_cast<double>(tc_ticks_ + 1) * params_.tc_interval - now_, kTcTimer);
    }
}

void OlsrAgent::expire(double now) {
    const auto before = links_.size() + topology_.size() + selectors_.size();
    std::erase_if(links_, [&](const auto& kv) { return kv.second.heard_until < now; });
    std::erase_if(selectors_, [&](const auto& kv) { return kv.second < now; });
    std::erase_if(topology_, [&](const auto& kv) { return kv.second.until < now; });
    std::erase_if(seen_, [&](const auto& kv) { return kv.second < now; });
    if (links_.size() + topology_.size() + selectors_.size() != before) dirty_ = true;
    const auto sym = static_cast<std::size_t>(
        std::count_if(links_.begin(), links_.end(), [&](const auto& kv) { return kv.second.sym_until >= now; }));
    if (sym != sym_count_) dirty_ = true;
    sym_count_ = sym;
}

std::set<NodeId> OlsrAgent::symmetric_neighbors(double now) const {
    std::set<NodeId> out;
    for (const auto& [n, l] : links_)
        if (l.sym_until >= now) out.insert(n);
    return out;
}

std::map<NodeId, std::set<NodeId>> OlsrAgent::two_hop(double now) const {
    const auto sym = symmetric_neighbors(now);
    std::map<NodeId, std::set<NodeId>> out;
    for (NodeId n : sym)
        for (NodeId y : links_.at(n).reaches)
            if (y != self_ && !sym.contains(y)) out[y].insert(n);
    return out;
}

std::set<NodeId> OlsrAgent::mpr_selectors(double now) const {
    std::set<NodeId> out;
    for (const auto& [n, until] : selectors_)
        if (until >= now) out.insert(n);
    return out;
}

msg::OlsrHello OlsrAgent::build_hello(double now) {
    now_ = now;
    expire(now);
    const auto sym = symmetric_neighbors(now);
    std::map<NodeId, std::set<NodeId>> coverage;
    for (NodeId n : sym) {
        auto& c = coverage[n];
        for (NodeId y : links_.at(n).reaches)
            if (y != self_) c.insert(y);
    }
    mprs_ = select_mprs(sym, coverage);

    msg::OlsrHello h;
    for (const auto& [n, l] : links_) {
        if (l.sym_until >= now)
            h.symmetric.push_back(n);
        else
            h.heard.push_back(n);
    }
    h.mprs.assign(mprs_.begin(), mprs_.end());
    return h;
}

void OlsrAgent::emit_hello(NodeContext& ctx) {
    ++stats_.hellos_sent;
    ctx.send_control(kBroadcast, kBroadcast, build_hello(ctx.now()), 1);
}

void OlsrAgent::emit_tc(NodeContext& ctx) {
    expire(ctx.now());
    const auto selectors = mpr_selectors(ctx.now());
    if (selectors.empty()) return;
    if (selectors != last_selectors_) {
        ++ansn_;
        last_selectors_ = selectors;
    }
    ++msg_seq_;
    seen_[{self_, msg_seq_}] = ctx.now() + params_.hold_time_multiplier * params_.tc_interval;
    ++stats_.tcs_originated;
    ctx.send_control(kBroadcast, kBroadcast, msg::OlsrTc{self_, ansn_, msg_seq_, {selectors.begin(), selectors.end()}},
                     kTcTtl);
}

void OlsrAgent::on_hello(NodeId from, const msg::OlsrHello& m) {
    const double hold = params_.hold_time_multiplier * params_.hello_interval;
    Link& l = links_[from];
    const bool was_sym = l.sym_until >= now_;
    l.heard_until = now_ + hold;
    const bool lists_me = std::find(m.symmetric.begin(), m.symmetric.end(), self_) != m.symmetric.end() ||
                          std::find(m.heard.begin(), m.heard.end(), self_) != m.heard.end();
    if (lists_me) l.sym_until = now_ + hold;
    const bool is_sym = l.sym_until >= now_;

    std::set<NodeId> reaches(m.symmetric.begin(), m.symmetric.end());
    if (!is_sym) reaches.clear();
    if (reaches != l.reaches || was_sym != is_sym) dirty_ = true;
    l.reaches = std::move(reaches);

    if (is_sym && std::find(m.mprs.begin(), m.mprs.end(), self_) != m.mprs.end())
        selectors_[from] = now_ + hold;
    else
        selectors_.erase(from);
}

void OlsrAgent::on_tc(NodeContext& ctx, const Packet& pkt, const msg::OlsrTc& m) {
    const NodeId from = pkt.prev_hop;
    auto link = links_.find(from);
    if (link == links_.end() || link->second.sym_until < now_) return;
    if (m.origin == self_) return;

    const double hold = params_.hold_time_multiplier * params_.tc_interval;
    auto [seen, fresh] = seen_.try_emplace({m.origin, m.msg_seq}, now_ + hold);
    if (!fresh) {
        ++stats_.tcs_duplicate;
        return;
    }

    auto it = topology_.find(m.origin);
    if (it != topology_.end() && static_cast<std::int32_t>(m.ansn - it->second.ansn) < 0) {
        ++stats_.tcs_stale;
        return;
    }
    Topology& t = topology_[m.origin];
    std::set<NodeId> selectors(m.selectors.begin(), m.selectors.end());
    if (selectors != t.selectors) dirty_ = true;
    t.ansn = m.ansn;
    t.selectors = std::move(selectors);
    t.until = now_ + hold;

    auto sel = selectors_.find(from);
    if (sel != selectors_.end() && sel->second >= now_ && pkt.ttl > 1) {
        ++stats_.tcs_forwarded;
        ctx.send_control(kBroadcast, kBroadcast, m, pkt.ttl - 1);
    }
}

void OlsrAgent::on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& m) {
    now_ = ctx.now();
    expire(now_);
    if (const auto* h = std::get_if<msg::OlsrHello>(&m))
        on_hello(pkt.prev_hop, *h);
    else if (const auto* tc = std::get_if<msg::OlsrTc>(&m))
        on_tc(ctx, pkt, *tc);
}

void OlsrAgent::recompute() const {
    if (!dirty_) return;
    Adjacency adj;
    for (const auto& [n, l] : links_) {
        if (l.sym_until < now_) continue;
        adj[self_].insert(n);
        adj[n].insert(l.reaches.begin(), l.reaches.end());
    }
    for (const auto& [origin, t] : topology_)
        if (t.until >= now_) adj[origin].insert(t.selectors.begin(), t.selectors.end());
    routes_ = shortest_path_routes(self_, adj);
    dirty_ = false;
}

std::map<NodeId, RouteView> OlsrAgent::routes() const {
    recompute();
    return routes_;
}

std::optional<RouteView> OlsrAgent::route(NodeId dest) const {
    recompute();
    auto it = routes_.find(dest);
    if (it == routes_.end()) return std::nullopt;
    return it->second;
}

void OlsrAgent::on_data(NodeContext& ctx, Packet pkt) {
    now_ = ctx.now();
    expire(now_);
    if (auto r = route(pkt.dst)) {
        ctx.send_data(r->next_hop, std::move(pkt));
        return;
    }
    ctx.drop(std::move(pkt), DropReason::NoRoute);
}

void OlsrAgent::on_send_failure(NodeContext& ctx, NodeId, std::optional<Packet> data) {
    if (data) ctx.drop(std::move(*data), DropReason::LinkBreak);
}

}  // namespace manetsim::routing
