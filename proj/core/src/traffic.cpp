#include "manetsim/traffic.hpp"

#include "manetsim/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace manetsim {

std::vector<std::string> check(const FlowConfig& flow, int node_count, double horizon) {
    std::vector<std::string> problems;
    auto valid_node = [&](NodeId n) { return n >= 0 && n < node_count; };
    if (!valid_node(flow.src) || !valid_node(flow.dst))
        problems.push_back(fmt::format("flow {}->{} references a node outside [0, {})", flow.src, flow.dst, node_count));
    if (flow.src == flow.dst) problems.push_back(fmt::format("flow {}->{} must have distinct endpoints", flow.src, flow.dst));
    if (!(flow.rate > 0.0)) problems.push_back("flow rate must be > 0");
    if (flow.packet_size == 0) problems.push_back("flow packet_size must be > 0");
    if (!(flow.start_t >= 0.0) || !(flow.start_t < flow.stop_t) || flow.stop_t > horizon)
        problems.push_back(fmt::format("flow window must satisfy 0 <= start < stop <= horizon ({} .. {})", flow.start_t, flow.stop_t));
    return problems;
}

std::uint64_t emission_count(const FlowConfig& flow) {
    const double n = (flow.stop_t - flow.start_t) * flow.rate;
    if (!(n > 0.0)) return 0;
    return static_cast<std::uint64_t>(std::floor(n + 1e-9));
}

double emission_time(const FlowConfig& flow, std::uint64_t index) {
    return flow.start_t + static_cast<double>(index) / flow.rate;
}

std::vector<FlowConfig> generate_flows(const TrafficConfig& cfg, int node_count, double horizon, std::uint64_t seed) {
    std::vector<FlowConfig> flows;
    if (node_count < 2) return flows;
    const auto n = static_cast<std::uint64_t>(node_count);
    const auto pairs = static_cast<int>(std::min<std::uint64_t>(n * (n - 1), static_cast<std::uint64_t>(cfg.flows)));
    Rng rng(hash_keys({seed, 0x747266ULL}));
    std::set<std::pair<NodeId, NodeId>> used;
    while (static_cast<int>(flows.size()) < pairs) {
        const auto src = static_cast<NodeId>(rng.below(n));
        const auto dst = static_cast<NodeId>(rng.below(n));
        if (src == dst || !used.emplace(src, dst).second) continue;
        FlowConfig f;
        f.src = src;
        f.dst = dst;
        f.packet_size = cfg.packet_size;
        f.rate = cfg.rate;
        f.start_t = std::min(rng.uniform(cfg.start_min, cfg.start_max), horizon);
        f.stop_t = horizon;
        flows.push_back(f);
    }
    return flows;
}

}  // namespace manetsim
