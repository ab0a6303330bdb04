#pragma once

#include "manetsim/geometry.hpp"
#include "manetsim/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace manetsim {

enum class MacProfile { Mac80211, Mac80211p };

std::string_view to_string(MacProfile m) noexcept;
std::optional<MacProfile> parse_mac(std::string_view s) noexcept;

/// Fixed-radius radio plus a latency/loss curve in the number of contenders.
struct RadioConfig {
    double range = 250.0;
    MacProfile mac = MacProfile::Mac80211;
    double base_delay = 0.002;
    double per_contender_delay = 0.001;
    double loss_base = 0.01;
    double loss_per_contender = 0.004;

    static RadioConfig preset(MacProfile mac);

    friend bool operator==(const RadioConfig&, const RadioConfig&) = default;
};

std::vector<std::string> check(const RadioConfig& cfg);

/// Per-hop latency with `contenders` other stations in the sender's range.
constexpr double hop_delay(const RadioConfig& cfg, int contenders) noexcept {
    return cfg.base_delay + cfg.per_contender_delay * contenders;
}

constexpr double loss_probability(const RadioConfig& cfg, int contenders) noexcept {
    const double p = cfg.loss_base + cfg.loss_per_contender * contenders;
    return p < 1.0 ? p : 1.0;
}

/// Closed-ball unit-disk test.
constexpr bool in_range(Vec2 a, Vec2 b, double range) noexcept {
    return distance_sq(a, b) <= range * range;
}

/// Ids of all nodes within range of `node`, ascending, excluding itself.
std::vector<NodeId> neighbors_of(std::span<const Vec2> positions, NodeId node, double range);

/// Full adjacency, one ascending list per node.
std::vector<std::vector<NodeId>> unit_disk_graph(std::span<const Vec2> positions, double range);

}  // namespace manetsim
