#pragma once

#include "manetsim/geometry.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace manetsim::mobility {

enum class Model { Static, RandomWaypoint, RoadGrid };

std::string_view to_string(Model m) noexcept;
std::optional<Model> parse_model(std::string_view s) noexcept;

struct Waypoint {
    Vec2 pos;
    double arrive_t = 0.0;

    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

using Trajectory = std::vector<Waypoint>;

inline constexpr double kDefaultSpeed = 40.0 / 3.6;  // 40 kph

struct MobilityConfig {
    Model model = Model::RandomWaypoint;
    Area area{1000.0, 1000.0};
    double speed = kDefaultSpeed;
    double pause = 0.0;
    double grid_spacing = 200.0;
    std::uint64_t seed = 1;

    friend bool operator==(const MobilityConfig&, const MobilityConfig&) = default;
};

/// Problems with a mobility config; empty when it is usable.
std::vector<std::string> check(const MobilityConfig& cfg);

/// Linear interpolation along the trajectory. A single-waypoint trajectory
/// is a node parked there from its arrival time on. Throws std::out_of_range
/// for times outside the trajectory's span.
Vec2 position_at(std::span<const Waypoint> trajectory, double t);

/// Waypoints covering [0, horizon]. Deterministic in (cfg, node).
/// Throws ConfigError for unusable configs or a non-positive horizon.
Trajectory generate_trajectory(const MobilityConfig& cfg, NodeId node, double horizon);

/// Sequential lookup for monotonically increasing query times.
class Cursor {
public:
    explicit Cursor(const Trajectory& trajectory) : traj_(&trajectory) {}
    Vec2 at(double t);

private:
    const Trajectory* traj_;
    std::size_t seg_ = 0;
};

/// Plain-text trace rows `node_id t x y`, one waypoint per line.
void write_trajectories(std::ostream& out, const std::map<NodeId, Trajectory>& trajectories);
/// Parses rows written by write_trajectories (or converted external traces).
/// Blank lines and lines starting with '#' are skipped. Throws ConfigError.
std::map<NodeId, Trajectory> read_trajectories(std::istream& in);

}  // namespace manetsim::mobility
