#pragma once

#include "manetsim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace manetsim {

/// Constant-bit-rate source.
struct FlowConfig {
    NodeId src = 0;
    NodeId dst = 1;
    std::uint32_t packet_size = 1000;  // bytes
    double rate = 4.0;                 // packets/s
    double start_t = 10.0;
    double stop_t = 900.0;

    friend bool operator==(const FlowConfig&, const FlowConfig&) = default;
};

std::vector<std::string> check(const FlowConfig& flow, int node_count, double horizon);

/// Number of packets a flow emits: floor((stop - start) * rate).
std::uint64_t emission_count(const FlowConfig& flow);
/// Send time of emission `index` (0-based): start + index / rate.
double emission_time(const FlowConfig& flow, std::uint64_t index);

/// Knobs for generated constant-bit-rate traffic.
struct TrafficConfig {
    int flows = 10;
    double rate = 4.0;
    std::uint32_t packet_size = 1000;
    double start_min = 10.0;
    double start_max = 20.0;

    friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

/// Distinct random (src, dst) pairs, src != dst, starts uniform in
/// [start_min, start_max], each running to the horizon. At most
/// node_count * (node_count - 1) flows. Deterministic in seed.
std::vector<FlowConfig> generate_flows(const TrafficConfig& cfg, int node_count, double horizon, std::uint64_t seed);

}  // namespace manetsim
