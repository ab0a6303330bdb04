#include "manetsim/routing/aodv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace manetsim::routing {

namespace {

constexpr std::uint64_t kHelloTimer = 1;
constexpr std::uint64_t kDiscoveryTimer = 2;
constexpr int kLocalAddTtl = 2;
constexpr int kTimeoutBuffer = 2;

std::uint64_t token(std::uint64_t kind, NodeId dest = 0, std::uint32_t generation = 0) {
    return (kind << 56) | (static_cast<std::uint64_t>(static_cast<std::uint32_t>(dest)) << 24) | (generation & 0xFFFFFFu);
}

}  // namespace

AodvParams AodvParams::def() {
    return AodvParams{};
}

AodvParams AodvParams::mod() {
    AodvParams p;
    p.ttl_increment = 4;
    p.ttl_threshold = 9;
    p.net_diameter = 10;
    return p;
}

std::vector<std::string> check(const AodvParams& p) {
    std::vector<std::string> problems;
    if (p.ttl_start < 1) problems.emplace_back("aodv ttl_start must be >= 1");
    if (p.ttl_increment < 1) problems.emplace_back("aodv ttl_increment must be >= 1");
    if (p.ttl_threshold < p.ttl_start) problems.emplace_back("aodv ttl_threshold must be >= ttl_start");
    if (p.ttl_threshold > p.net_diameter) problems.emplace_back("aodv ttl_threshold must be <= net_diameter");
    if (!(p.hello_interval > 0.0)) problems.emplace_back("aodv hello_interval must be > 0");
    if (p.allowed_hello_loss < 1) problems.emplace_back("aodv allowed_hello_loss must be >= 1");
    if (p.rreq_retries < 0) problems.emplace_back("aodv rreq_retries must be >= 0");
    if (!(p.active_route_timeout > 0.0)) problems.emplace_back("aodv active_route_timeout must be > 0");
    if (!(p.node_traversal_time > 0.0)) problems.emplace_back("aodv node_traversal_time must be > 0");
    if (!(p.buffer_timeout > 0.0)) problems.emplace_back("aodv buffer_timeout must be > 0");
    if (p.buffer_limit == 0) problems.emplace_back("aodv buffer_limit must be > 0");
    return problems;
}

std::vector<int> expanding_ring_ttls(const AodvParams& p) {
    std::vector<int> ttls;
    for (int ttl = p.ttl_start; ttl <= p.ttl_threshold; ttl += p.ttl_increment) ttls.push_back(ttl);
    ttls.insert(ttls.end(), static_cast<std::size_t>(p.rreq_retries) + 1, p.net_diameter);
    return ttls;
}

int local_repair_ttl(int hops_to_dest, int hops_to_origin) {
    const int half_back = (hops_to_origin + 1) / 2;
    return std::max(hops_to_dest, half_back) + kLocalAddTtl;
}

AodvAgent::AodvAgent(NodeId self, AodvParams params)
    : self_(self), params_(params), ring_(expanding_ring_ttls(params_)) {
    if (auto problems = check(params_); !problems.empty()) throw ConfigError(std::move(problems));
}

const RouteEntry* AodvAgent::entry(NodeId dest) const {
    auto it = routes_.find(dest);
    return it == routes_.end() ? nullptr : &it->second;
}

std::size_t AodvAgent::buffered(NodeId dest) const {
    auto it = buffers_.find(dest);
    return it == buffers_.end() ? 0 : it->second.size();
}

std::optional<RouteView> AodvAgent::route(NodeId dest) const {
    const RouteEntry* r = entry(dest);
    if (!r || r->state != RouteState::Valid || r->lifetime < now_) return std::nullopt;
    return RouteView{r->next_hop, r->hop_count};
}

RouteEntry* AodvAgent::valid_route(NodeId dest) {
    auto it = routes_.find(dest);
    if (it == routes_.end()) return nullptr;
    RouteEntry& r = it->second;
    if (r.state == RouteState::Valid && r.lifetime < now_) r.state = RouteState::Invalid;
    return r.state == RouteState::Valid ? &r : nullptr;
}

void AodvAgent::start(NodeContext& ctx) {
    now_ = ctx.now();
    ctx.set_timer(params_.hello_interval, token(kHelloTimer));
}

void AodvAgent::on_timer(NodeContext& ctx, std::uint64_t tok) {
    now_ = ctx.now();
    const std::uint64_t kind = tok >> 56;
    if (kind == kHelloTimer) {
        hello_tick(ctx);
    } else if (kind == kDiscoveryTimer) {
        const auto dest = static_cast<NodeId>(static_cast<std::uint32_t>(tok >> 24));
        discovery_timeout(ctx, dest, static_cast<std::uint32_t>(tok & 0xFFFFFFu));
    }
}

void AodvAgent::hello_tick(NodeContext& ctx) {
    const double hold = params_.allowed_hello_loss * params_.hello_interval;
    ctx.send_control(kBroadcast, kBroadcast, msg::AodvHello{self_, seq_, hold}, 1);

    std::vector<NodeId> lost;
    for (const auto& [n, heard] : neighbors_)
        if (now_ - heard > hold + 1e-9) lost.push_back(n);
    for (NodeId n : lost) {
        neighbors_.erase(n);
        break_link(ctx, n, kNoNode);
    }

    for (auto& [dest, queue] : buffers_) {
        while (!queue.empty() && now_ - queue.front().enqueued >= params_.buffer_timeout) {
            ctx.drop(std::move(queue.front().pkt), DropReason::BufferTimeout);
            queue.pop_front();
        }
    }
    std::erase_if(buffers_, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(seen_rreq_, [this](const auto& kv) { return kv.second < now_; });
    for (auto& [dest, r] : routes_)
        if (r.state == RouteState::Valid && r.lifetime < now_) r.state = RouteState::Invalid;

    ctx.set_timer(params_.hello_interval, token(kHelloTimer));
}

void AodvAgent::touch_neighbor(NodeId n, double now) {
    neighbors_[n] = now;
    auto it = routes_.find(n);
    const double life = now + params_.active_route_timeout;
    if (it == routes_.end()) {
        RouteEntry r;
        r.dest = n;
        r.next_hop = n;
        r.hop_count = 1;
        r.lifetime = life;
        r.state = RouteState::Valid;
        routes_.emplace(n, std::move(r));
        return;
    }
    RouteEntry& r = it->second;
    if (r.state != RouteState::Valid || r.lifetime < now || r.hop_count != 1) {
        if (r.state == RouteState::UnderRepair) return;
        r.next_hop = n;
        r.hop_count = 1;
        r.state = RouteState::Valid;
        r.lifetime = life;
    } else {
        r.lifetime = std::max(r.lifetime, life);
    }
}

bool AodvAgent::update_route(NodeId dest, NodeId next_hop, int hops, std::uint32_t seq, bool valid_seq, double lifetime) {
    if (dest == self_) return false;
    auto [it, inserted] = routes_.try_emplace(dest);
    RouteEntry& r = it->second;
    const bool usable = r.state == RouteState::Valid && r.lifetime >= now_;
    bool take = inserted || !r.valid_seq;
    if (!take && valid_seq) {
        const auto diff = static_cast<std::int32_t>(seq - r.dest_seq);
        take = diff > 0 || (diff == 0 && (!usable || hops < r.hop_count));
    }
    if (!take) return false;
    r.dest = dest;
    r.next_hop = next_hop;
    r.hop_count = hops;
    if (valid_seq) {
        if (!r.valid_seq || static_cast<std::int32_t>(seq - r.dest_seq) > 0) r.dest_seq = seq;
        r.valid_seq = true;
    }
    r.lifetime = std::max(usable ? r.lifetime : 0.0, lifetime);
    r.state = RouteState::Valid;
    return true;
}

void AodvAgent::invalidate(RouteEntry& r, double now) {
    if (r.state == RouteState::Invalid) return;
    r.state = RouteState::Invalid;
    if (r.valid_seq) ++r.dest_seq;
    r.lifetime = now;
}

void AodvAgent::on_control(NodeContext& ctx, const Packet& pkt, const ControlMessage& m) {
    now_ = ctx.now();
    if (const auto* hello = std::get_if<msg::AodvHello>(&m)) {
        on_hello(ctx, pkt.prev_hop, *hello);
    } else if (const auto* rreq = std::get_if<msg::Rreq>(&m)) {
        on_rreq(ctx, pkt, *rreq);
    } else if (const auto* rrep = std::get_if<msg::Rrep>(&m)) {
        on_rrep(ctx, pkt, *rrep);
    } else if (const auto* rerr = std::get_if<msg::Rerr>(&m)) {
        on_rerr(ctx, pkt.prev_hop, *rerr);
    }
}

void AodvAgent::on_hello(NodeContext& ctx, NodeId from, const msg::AodvHello& m) {
    touch_neighbor(from, now_);
    RouteEntry& r = routes_[from];
    if (r.state == RouteState::UnderRepair) return;
    if (!r.valid_seq || static_cast<std::int32_t>(m.seq - r.dest_seq) > 0) r.dest_seq = m.seq;
    r.valid_seq = true;
    r.lifetime = std::max(r.lifetime, now_ + m.lifetime);
    flush(ctx, from);
}

void AodvAgent::on_rreq(NodeContext& ctx, const Packet& pkt, const msg::Rreq& m) {
    const NodeId from = pkt.prev_hop;
    touch_neighbor(from, now_);
    if (m.origin == self_) return;
    const auto key = std::make_pair(m.origin, m.id);
    if (seen_rreq_.contains(key)) return;
    const double net_traversal = 2 * params_.node_traversal_time * params_.net_diameter;
    seen_rreq_[key] = now_ + 2 * net_traversal;

    const int hops = m.hop_count + 1;
    const double reverse_life = now_ + std::max(params_.active_route_timeout, 2 * net_traversal - 2 * hops * params_.node_traversal_time);
    update_route(m.origin, from, hops, m.origin_seq, true, reverse_life);
    RouteEntry* reverse = valid_route(m.origin);
    flush(ctx, m.origin);

    if (m.dest == self_) {
        if (!m.unknown_seq && m.dest_seq == seq_ + 1) ++seq_;
        if (!reverse) return;
        msg::Rrep rep{self_, seq_, m.origin, 0, 2 * params_.active_route_timeout, false};
        ctx.send_control(reverse->next_hop, m.origin, rep, params_.net_diameter);
        ++stats_.rrep_sent;
        return;
    }

    RouteEntry* fwd = valid_route(m.dest);
    const bool fresh_enough =
        fwd && fwd->valid_seq && (m.unknown_seq || static_cast<std::int32_t>(fwd->dest_seq - m.dest_seq) >= 0);
    if (fresh_enough && reverse) {
        fwd->precursors.insert(reverse->next_hop);
        reverse->precursors.insert(fwd->next_hop);
        msg::Rrep rep{m.dest, fwd->dest_seq, m.origin, fwd->hop_count, fwd->lifetime - now_, false};
        ctx.send_control(reverse->next_hop, m.origin, rep, params_.net_diameter);
        ++stats_.rrep_sent;
        if (params_.grat_rrep) {
            msg::Rrep grat{m.origin, m.origin_seq, m.dest, reverse->hop_count, reverse->lifetime - now_, true};
            ctx.send_control(fwd->next_hop, m.dest, grat, params_.net_diameter);
            ++stats_.grat_rrep_sent;
        }
        return;
    }

    if (pkt.ttl > 1) {
        msg::Rreq fwd_req = m;
        fwd_req.hop_count = hops;
        if (const RouteEntry* known = entry(m.dest); known && known->valid_seq) {
            if (fwd_req.unknown_seq || static_cast<std::int32_t>(known->dest_seq - fwd_req.dest_seq) > 0) {
                fwd_req.dest_seq = known->dest_seq;
                fwd_req.unknown_seq = false;
            }
        }
        ctx.send_control(kBroadcast, kBroadcast, fwd_req, pkt.ttl - 1);
    }
}

void AodvAgent::on_rrep(NodeContext& ctx, const Packet& pkt, const msg::Rrep& m) {
    const NodeId from = pkt.prev_hop;
    touch_neighbor(from, now_);
    const int hops = m.hop_count + 1;
    if (m.dest == self_) return;
    const bool updated = update_route(m.dest, from, hops, m.dest_seq, true, now_ + m.lifetime);

    if (m.origin == self_) {
        if (valid_route(m.dest)) {
            auto d = discoveries_.find(m.dest);
            if (d != discoveries_.end()) {
                if (d->second.repair) ++stats_.local_repairs_ok;
                discoveries_.erase(d);
            }
        }
        flush(ctx, m.dest);
        return;
    }
    if (!updated) return;

    RouteEntry* reverse = valid_route(m.origin);
    RouteEntry* fwd = valid_route(m.dest);
    if (!reverse || !fwd) return;
    fwd->precursors.insert(reverse->next_hop);
    reverse->precursors.insert(from);
    msg::Rrep next = m;
    next.hop_count = hops;
    ctx.send_control(reverse->next_hop, m.origin, next, pkt.ttl > 1 ? pkt.ttl - 1 : 1);
    flush(ctx, m.dest);
}

void AodvAgent::on_rerr(NodeContext& ctx, NodeId from, const msg::Rerr& m) {
    touch_neighbor(from, now_);
    std::vector<std::pair<NodeId, std::uint32_t>> forward;
    for (const auto& [dest, seq] : m.unreachable) {
        auto it = routes_.find(dest);
        if (it == routes_.end()) continue;
        RouteEntry& r = it->second;
        if (r.state != RouteState::Valid || r.next_hop != from) continue;
        invalidate(r, now_);
        if (static_cast<std::int32_t>(seq - r.dest_seq) > 0) r.dest_seq = seq;
        if (!r.precursors.empty()) forward.emplace_back(dest, r.dest_seq);
    }
    if (!forward.empty()) send_rerr(ctx, std::move(forward));
}

void AodvAgent::send_rerr(NodeContext& ctx, std::vector<std::pair<NodeId, std::uint32_t>> unreachable) {
    ctx.send_control(kBroadcast, kBroadcast, msg::Rerr{std::move(unreachable)}, 1);
    ++stats_.rerr_sent;
}

void AodvAgent::break_link(NodeContext& ctx, NodeId next_hop, NodeId keep) {
    std::vector<std::pair<NodeId, std::uint32_t>> unreachable;
    for (auto& [dest, r] : routes_) {
        if (dest == keep || r.next_hop != next_hop || r.state != RouteState::Valid) continue;
        invalidate(r, now_);
        if (!r.precursors.empty()) unreachable.emplace_back(dest, r.dest_seq);
    }
    if (!unreachable.empty()) send_rerr(ctx, std::move(unreachable));
}

void AodvAgent::on_data(NodeContext& ctx, Packet pkt) {
    now_ = ctx.now();
    const NodeId dest = pkt.dst;
    if (RouteEntry* r = valid_route(dest)) {
        if (pkt.prev_hop != kNoNode) {
            r->precursors.insert(pkt.prev_hop);
            if (RouteEntry* back = valid_route(pkt.src))
                back->lifetime = std::max(back->lifetime, now_ + params_.active_route_timeout);
        }
        forward(ctx, *r, std::move(pkt));
        return;
    }
    if (pkt.prev_hop == kNoNode) {
        buffer(ctx, std::move(pkt));
        if (!discoveries_.contains(dest)) start_discovery(ctx, dest);
        return;
    }
    if (auto it = routes_.find(dest); it != routes_.end() && it->second.state == RouteState::UnderRepair) {
        buffer(ctx, std::move(pkt));
        return;
    }
    std::uint32_t seq = 0;
    if (auto it = routes_.find(dest); it != routes_.end()) seq = it->second.dest_seq;
    ctx.drop(std::move(pkt), DropReason::NoRoute);
    send_rerr(ctx, {{dest, seq}});
}

void AodvAgent::forward(NodeContext& ctx, RouteEntry& r, Packet pkt) {
    r.lifetime = std::max(r.lifetime, now_ + params_.active_route_timeout);
    if (auto hop = routes_.find(r.next_hop); hop != routes_.end() && hop->second.state == RouteState::Valid)
        hop->second.lifetime = std::max(hop->second.lifetime, now_ + params_.active_route_timeout);
    ctx.send_data(r.next_hop, std::move(pkt));
}

void AodvAgent::buffer(NodeContext& ctx, Packet pkt) {
    auto& queue = buffers_[pkt.dst];
    if (queue.size() >= params_.buffer_limit) {
        ctx.drop(std::move(queue.front().pkt), DropReason::BufferOverflow);
        queue.pop_front();
    }
    queue.push_back({std::move(pkt), now_});
}

void AodvAgent::flush(NodeContext& ctx, NodeId dest) {
    auto it = buffers_.find(dest);
    if (it == buffers_.end()) return;
    RouteEntry* r = valid_route(dest);
    if (!r) return;
    std::deque<Buffered> queue = std::move(it->second);
    buffers_.erase(it);
    for (auto& b : queue) forward(ctx, *r, std::move(b.pkt));
}

void AodvAgent::drop_buffered(NodeContext& ctx, NodeId dest, DropReason why) {
    auto it = buffers_.find(dest);
    if (it == buffers_.end()) return;
    for (auto& b : it->second) ctx.drop(std::move(b.pkt), why);
    buffers_.erase(it);
}

void AodvAgent::send_rreq(NodeContext& ctx, NodeId dest, int ttl, const Discovery& d) {
    ++seq_;
    ++rreq_id_;
    msg::Rreq req;
    req.id = rreq_id_;
    req.origin = self_;
    req.origin_seq = seq_;
    req.dest = dest;
    if (const RouteEntry* known = entry(dest); known && known->valid_seq) {
        req.dest_seq = known->dest_seq;
        req.unknown_seq = false;
    }
    const double net_traversal = 2 * params_.node_traversal_time * params_.net_diameter;
    seen_rreq_[{self_, req.id}] = now_ + 2 * net_traversal;
    ctx.send_control(kBroadcast, kBroadcast, req, ttl);
    ++stats_.rreq_originated;

    const double wait = ttl >= params_.net_diameter ? net_traversal
                                                    : 2 * params_.node_traversal_time * (ttl + kTimeoutBuffer);
    ctx.set_timer(wait, token(kDiscoveryTimer, dest, d.generation));
}

void AodvAgent::start_discovery(NodeContext& ctx, NodeId dest) {
    Discovery d;
    d.generation = next_generation_++;
    discoveries_[dest] = d;
    send_rreq(ctx, dest, ring_.front(), d);
}

void AodvAgent::start_repair(NodeContext& ctx, NodeId dest, int ttl) {
    Discovery d;
    d.generation = next_generation_++;
    d.repair = true;
    d.repair_ttl = ttl;
    discoveries_[dest] = d;
    ++stats_.local_repairs;
    send_rreq(ctx, dest, ttl, d);
}

void AodvAgent::discovery_timeout(NodeContext& ctx, NodeId dest, std::uint32_t generation) {
    auto it = discoveries_.find(dest);
    if (it == discoveries_.end() || (it->second.generation & 0xFFFFFFu) != generation) return;
    Discovery& d = it->second;
    if (valid_route(dest)) {
        discoveries_.erase(it);
        flush(ctx, dest);
        return;
    }
    if (d.repair) {
        discoveries_.erase(it);
        ++stats_.discoveries_failed;
        if (auto r = routes_.find(dest); r != routes_.end()) {
            RouteEntry& entry = r->second;
            entry.state = RouteState::Invalid;
            entry.lifetime = now_;
            if (!entry.precursors.empty()) send_rerr(ctx, {{dest, entry.dest_seq}});
        }
        drop_buffered(ctx, dest, DropReason::LinkBreak);
        return;
    }
    if (++d.attempt < ring_.size()) {
        send_rreq(ctx, dest, ring_[d.attempt], d);
        return;
    }
    discoveries_.erase(it);
    ++stats_.discoveries_failed;
    drop_buffered(ctx, dest, DropReason::DiscoveryFailed);
}

void AodvAgent::on_send_failure(NodeContext& ctx, NodeId next_hop, std::optional<Packet> data) {
    now_ = ctx.now();
    neighbors_.erase(next_hop);
    if (!data) {
        break_link(ctx, next_hop, kNoNode);
        return;
    }

    Packet pkt = std::move(*data);
    const NodeId dest = pkt.dst;
    auto it = routes_.find(dest);
    const bool via_broken = it != routes_.end() && it->second.next_hop == next_hop;

    if (pkt.src == self_) {
        break_link(ctx, next_hop, kNoNode);
        buffer(ctx, std::move(pkt));
        if (!discoveries_.contains(dest)) start_discovery(ctx, dest);
        return;
    }

    if (via_broken && it->second.state == RouteState::UnderRepair) {
        buffer(ctx, std::move(pkt));
        return;
    }

    const int hops_to_origin = pkt.hops;
    if (params_.local_repair && via_broken && it->second.state == RouteState::Valid &&
        it->second.hop_count < hops_to_origin) {
        RouteEntry& r = it->second;
        const int ttl = local_repair_ttl(r.hop_count, hops_to_origin);
        r.state = RouteState::UnderRepair;
        if (r.valid_seq) ++r.dest_seq;
        break_link(ctx, next_hop, dest);
        buffer(ctx, std::move(pkt));
        start_repair(ctx, dest, ttl);
        return;
    }

    break_link(ctx, next_hop, kNoNode);
    ctx.drop(std::move(pkt), DropReason::LinkBreak);
}

}  // namespace manetsim::routing
