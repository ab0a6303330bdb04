#include "manetsim/simulator.hpp"

#include "manetsim/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace manetsim {

namespace {

constexpr std::uint64_t kDataLossKey = 0x44415441ULL;
constexpr std::uint64_t kControlLossKey = 0x4354524cULL;

}  // namespace

class Simulator::Context final : public routing::NodeContext {
public:
    Context(Simulator& sim, NodeId node) : sim_(sim), node_(node) {}

    NodeId self() const override { return node_; }
    double now() const override { return sim_.now_; }

    void send_control(NodeId next_hop, NodeId dst, ControlMessage msg, int ttl) override {
        Packet pkt;
        pkt.cls = PacketClass::Routing;
        pkt.src = node_;
        pkt.dst = dst;
        pkt.prev_hop = node_;
        pkt.size = wire_size(msg);
        pkt.ttl = ttl;
        pkt.created = sim_.now_;
        pkt.msg = std::make_shared<const ControlMessage>(std::move(msg));
        sim_.transmit(node_, next_hop, std::move(pkt));
    }

    void send_data(NodeId next_hop, Packet pkt) override {
        pkt.prev_hop = node_;
        pkt.ttl -= 1;
        pkt.hops += 1;
        sim_.transmit(node_, next_hop, std::move(pkt));
    }

    void drop(Packet pkt, DropReason why) override {
        if (pkt.is_data()) sim_.drop_data(node_, std::move(pkt), why);
    }

    void set_timer(double delay, std::uint64_t token) override {
        if (delay < 0.0) throw std::logic_error("negative timer delay");
        sim_.schedule(sim_.now_ + delay, ev::TimerFire{node_, token});
    }

private:
    Simulator& sim_;
    NodeId node_;
};

Simulator::Simulator(SimSetup setup) : setup_(std::move(setup)), trace_(setup_.trace) {
    std::vector<std::string> problems;
    const int n = node_count();
    if (n < 2) problems.push_back(fmt::format("node_count >= 2 required (got {})", n));
    if (!(setup_.horizon > 0.0)) problems.emplace_back("horizon must be positive");
    if (!setup_.make_agent) problems.emplace_back("no routing agent factory");
    for (auto& p : check(setup_.radio)) problems.push_back(std::move(p));
    for (std::size_t i = 0; i < setup_.trajectories.size(); ++i)
        if (setup_.trajectories[i].empty()) problems.push_back(fmt::format("node {} has an empty trajectory", i));
    for (const auto& f : setup_.flows)
        for (auto& p : check(f, n, setup_.horizon)) problems.push_back(std::move(p));
    if (!problems.empty()) throw ConfigError(std::move(problems));
    configured_flows_ = static_cast<std::uint32_t>(setup_.flows.size());

    agents_.reserve(static_cast<std::size_t>(n));
    cursors_.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        agents_.push_back(setup_.make_agent(i));
        if (!agents_.back()) throw ConfigError(fmt::format("agent factory returned null for node {}", i));
        cursors_.emplace_back(setup_.trajectories[static_cast<std::size_t>(i)]);
    }
    sampled_pos_.resize(static_cast<std::size_t>(n));
}

Simulator::~Simulator() = default;

routing::RoutingAgent& Simulator::agent(NodeId node) {
    return *agents_.at(static_cast<std::size_t>(node));
}

const routing::RoutingAgent& Simulator::agent(NodeId node) const {
    return *agents_.at(static_cast<std::size_t>(node));
}

Vec2 Simulator::position(NodeId node, double t) const {
    return mobility::position_at(setup_.trajectories.at(static_cast<std::size_t>(node)), t);
}

std::vector<NodeId> Simulator::neighbors(NodeId node, double t) {
    const auto idx = static_cast<std::int64_t>(std::floor(t / kMobilitySampleStep + 1e-6));
    const double sample_t = static_cast<double>(idx) * kMobilitySampleStep;
    std::vector<Vec2> pos;
    pos.reserve(setup_.trajectories.size());
    for (const auto& tr : setup_.trajectories) pos.push_back(mobility::position_at(tr, std::min(sample_t, tr.back().arrive_t)));
    return neighbors_of(pos, node, setup_.radio.range);
}

linkmath::SeriesForecast Simulator::forecast_link(NodeId a, NodeId b, double spacing, double lookahead) const {
    if (!(spacing > 0.0) || now_ - 2 * spacing < 0.0)
        throw std::invalid_argument("forecast_link needs 2 * spacing seconds of history");
    auto sample = [&](double t) { return linkmath::DistanceSample{t, distance(position(a, t), position(b, t))}; };
    return linkmath::forecast(sample(now_ - 2 * spacing), sample(now_ - spacing), sample(now_), setup_.radio.range,
                              lookahead);
}

void Simulator::inject_data(NodeId src, NodeId dst, double at, std::uint32_t size) {
    FlowConfig f;
    f.src = src;
    f.dst = dst;
    f.packet_size = size;
    f.start_t = at;
    f.stop_t = std::max(at, setup_.horizon);
    if (auto problems = check(f, node_count(), setup_.horizon + 1.0); !problems.empty()) throw ConfigError(std::move(problems));
    const auto flow = static_cast<std::uint32_t>(setup_.flows.size());
    setup_.flows.push_back(f);
    schedule(at, ev::TrafficSend{flow, std::numeric_limits<std::uint64_t>::max()});
}

void Simulator::schedule(double t, EventPayload payload) {
    if (t < now_) throw std::logic_error(fmt::format("causality violation: event at {} scheduled at {}", t, now_));
    queue_.push(t, std::move(payload));
}

void Simulator::refresh_connectivity(double t) {
    const auto idx = static_cast<std::int64_t>(std::floor(t / kMobilitySampleStep + 1e-6));
    if (idx == sample_index_) return;
    sample_index_ = idx;
    const double sample_t = static_cast<double>(idx) * kMobilitySampleStep;
    for (std::size_t i = 0; i < cursors_.size(); ++i) sampled_pos_[i] = cursors_[i].at(sample_t);
    adjacency_ = unit_disk_graph(sampled_pos_, setup_.radio.range);
}

RunMetrics Simulator::metrics() const {
    RunMetrics m = metrics_;
    m.data_in_flight = live_data_.size();
    m.routing_in_flight = pending_tx_.size();
    return m;
}

void Simulator::run_until(double t) {
    const double limit = std::min(t, setup_.horizon);
    if (!started_) {
        started_ = true;
        for (std::uint32_t f = 0; f < configured_flows_; ++f)
            if (emission_count(setup_.flows[f]) > 0) schedule(setup_.flows[f].start_t, ev::TrafficSend{f, 0});
        for (NodeId i = 0; i < node_count(); ++i) {
            Context ctx(*this, i);
            agents_[static_cast<std::size_t>(i)]->start(ctx);
        }
    }
    while (const Event* next = queue_.peek()) {
        if (next->t > limit) break;
        Event e = *queue_.pop();
        now_ = e.t;
        dispatch(e);
    }
    now_ = std::max(now_, limit);
}

const RunMetrics& Simulator::run() {
    run_until(setup_.horizon);
    metrics_.data_in_flight = live_data_.size();
    metrics_.routing_in_flight = pending_tx_.size();
    return metrics_;
}

void Simulator::dispatch(Event& e) {
    std::visit([this](auto& payload) { handle(payload); }, e.payload);
}

void Simulator::handle(ev::TimerFire& e) {
    Context ctx(*this, e.node);
    agents_[static_cast<std::size_t>(e.node)]->on_timer(ctx, e.token);
}

void Simulator::handle(ev::TrafficSend& e) {
    const FlowConfig& f = setup_.flows[e.flow];
    originate(f.src, f.dst, f.packet_size, e.flow);
    if (e.index == std::numeric_limits<std::uint64_t>::max()) return;  // one-off injection
    const std::uint64_t next = e.index + 1;
    if (next < emission_count(f)) schedule(emission_time(f, next), ev::TrafficSend{e.flow, next});
}

void Simulator::handle(ev::TxFailed& e) {
    Context ctx(*this, e.node);
    auto& agent = *agents_[static_cast<std::size_t>(e.node)];
    if (e.packet.is_data())
        agent.on_send_failure(ctx, e.next_hop, std::move(e.packet));
    else
        agent.on_send_failure(ctx, e.next_hop, std::nullopt);
}

void Simulator::handle(ev::PacketRx& e) {
    Packet& pkt = e.packet;
    const NodeId rx = e.receiver;
    if (!pkt.is_data()) {
        auto it = pending_tx_.find(e.tx_id);
        if (it == pending_tx_.end()) throw std::logic_error("reception for an unknown transmission");
        PendingTx& p = it->second;
        --p.remaining;
        if (!e.lost) p.any_received = true;
        if (p.remaining == 0) resolve_routing(e.tx_id, p.sender);
        if (e.lost) return;
        trace_.record(now_, TraceKind::RxRouting, rx, pkt);
        Context ctx(*this, rx);
        agents_[static_cast<std::size_t>(rx)]->on_control(ctx, pkt, *pkt.msg);
        return;
    }

    if (e.lost) {
        drop_data(pkt.prev_hop, std::move(pkt), DropReason::MacLoss);
        return;
    }
    trace_.record(now_, TraceKind::RxData, rx, pkt);
    if (rx == pkt.dst) {
        deliver(rx, std::move(pkt));
    } else if (pkt.ttl <= 0) {
        drop_data(rx, std::move(pkt), DropReason::TtlExpired);
    } else {
        Context ctx(*this, rx);
        agents_[static_cast<std::size_t>(rx)]->on_data(ctx, std::move(pkt));
    }
}

void Simulator::resolve_routing(std::uint64_t tx_id, NodeId sender) {
    auto it = pending_tx_.find(tx_id);
    if (it->second.any_received) {
        ++metrics_.routing_delivered;
    } else {
        ++metrics_.routing_dropped;
        trace_.record(now_, TraceKind::DropRouting, sender, it->second.packet);
    }
    pending_tx_.erase(it);
}

void Simulator::transmit(NodeId from, NodeId next_hop, Packet pkt) {
    refresh_connectivity(now_);
    const auto& nbrs = adjacency_[static_cast<std::size_t>(from)];
    const int contenders = std::max(0, static_cast<int>(nbrs.size()) - 1);
    const double arrive = now_ + hop_delay(setup_.radio, contenders);
    const double p_loss = loss_probability(setup_.radio, contenders);

    std::uint64_t tx_id = 0;
    std::uint64_t kind = 0, counter = 0;
    if (pkt.is_data()) {
        trace_.record(now_, TraceKind::TxData, from, pkt);
    } else {
        tx_id = next_tx_id_++;
        pkt.id = tx_id;
        ++metrics_.routing_packets;
        metrics_.routing_bytes += pkt.size;
        kind = pkt.msg->index();
        counter = control_counter_[{from, static_cast<std::size_t>(kind)}]++;
        trace_.record(now_, TraceKind::TxRouting, from, pkt);
    }

    std::vector<NodeId> receivers;
    if (next_hop == kBroadcast) {
        receivers = nbrs;
    } else if (std::binary_search(nbrs.begin(), nbrs.end(), next_hop)) {
        receivers.push_back(next_hop);
    }

    if (receivers.empty()) {
        if (next_hop != kBroadcast) {
            ++metrics_.mac_unicast_failures;
            schedule(now_ + setup_.radio.base_delay, ev::TxFailed{from, next_hop, pkt});
        }
        if (!pkt.is_data()) {
            ++metrics_.routing_dropped;
            trace_.record(now_, TraceKind::DropRouting, from, pkt);
        }
        return;
    }

    if (!pkt.is_data()) pending_tx_[tx_id] = PendingTx{static_cast<std::uint32_t>(receivers.size()), false, from, pkt};

    const auto seed = setup_.seed;
    for (NodeId r : receivers) {
        // Loss draws are keyed on the packet's identity rather than a shared
        // stream, so runs that differ only in MAC parameters see the same draws.
        const double u = pkt.is_data()
                             ? to_unit(hash_keys({seed, kDataLossKey, pkt.id, static_cast<std::uint64_t>(from),
                                                  static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(pkt.hops)}))
                             : to_unit(hash_keys({seed, kControlLossKey, static_cast<std::uint64_t>(from),
                                                  static_cast<std::uint64_t>(r), kind, counter}));
        schedule(arrive, ev::PacketRx{r, pkt, tx_id, u < p_loss});
    }
}

void Simulator::originate(NodeId src, NodeId dst, std::uint32_t size, std::uint32_t flow) {
    Packet pkt;
    pkt.id = next_data_id_++;
    pkt.cls = PacketClass::Data;
    pkt.src = src;
    pkt.dst = dst;
    pkt.size = size;
    pkt.ttl = kDataTtl;
    pkt.created = now_;
    pkt.flow = flow;
    live_data_.insert(pkt.id);
    ++metrics_.data_sent;
    trace_.record(now_, TraceKind::Send, src, pkt);
    Context ctx(*this, src);
    agents_[static_cast<std::size_t>(src)]->on_data(ctx, std::move(pkt));
}

void Simulator::deliver(NodeId node, Packet pkt) {
    if (live_data_.erase(pkt.id) != 1) throw std::logic_error(fmt::format("data packet {} delivered twice", pkt.id));
    ++metrics_.data_delivered;
    const double latency = now_ - pkt.created;
    metrics_.latency_sum += latency;
    metrics_.latencies.push_back(latency);
    trace_.record(now_, TraceKind::Deliver, node, pkt);
}

void Simulator::drop_data(NodeId node, Packet pkt, DropReason) {
    if (live_data_.erase(pkt.id) != 1) throw std::logic_error(fmt::format("data packet {} dropped twice", pkt.id));
    ++metrics_.data_dropped;
    trace_.record(now_, TraceKind::DropData, node, pkt);
}

}  // namespace manetsim
