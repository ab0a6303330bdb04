#include "manetsim/mobility.hpp"

#include "manetsim/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace manetsim::mobility {

std::string_view to_string(Model m) noexcept {
    switch (m) {
        case Model::Static: return "static";
        case Model::RandomWaypoint: return "random_waypoint";
        case Model::RoadGrid: return "road_grid";
    }
    return "?";
}

std::optional<Model> parse_model(std::string_view s) noexcept {
    if (s == "static") return Model::Static;
    if (s == "random_waypoint" || s == "rwp") return Model::RandomWaypoint;
    if (s == "road_grid" || s == "grid") return Model::RoadGrid;
    return std::nullopt;
}

std::vector<std::string> check(const MobilityConfig& cfg) {
    std::vector<std::string> problems;
    if (!(cfg.area.width > 0.0) || !(cfg.area.height > 0.0)) problems.emplace_back("mobility area must be positive");
    if (cfg.model != Model::Static && !(cfg.speed > 0.0)) problems.emplace_back("speed > 0 required for mobile models");
    if (cfg.pause < 0.0) problems.emplace_back("pause must be >= 0");
    if (cfg.model == Model::RoadGrid) {
        if (!(cfg.grid_spacing > 0.0))
            problems.emplace_back("grid_spacing must be positive");
        else if (cfg.grid_spacing > cfg.area.width || cfg.grid_spacing > cfg.area.height)
            problems.emplace_back("grid_spacing must not exceed the area side");
    }
    return problems;
}

Vec2 position_at(std::span<const Waypoint> trajectory, double t) {
    if (trajectory.empty()) throw std::out_of_range("empty trajectory");
    const auto& first = trajectory.front();
    if (t < first.arrive_t) throw std::out_of_range(fmt::format("t={} before trajectory start {}", t, first.arrive_t));
    if (trajectory.size() == 1) return first.pos;
    const auto& last = trajectory.back();
    if (t > last.arrive_t) throw std::out_of_range(fmt::format("t={} after trajectory end {}", t, last.arrive_t));

    auto it = std::upper_bound(trajectory.begin(), trajectory.end(), t,
                               [](double v, const Waypoint& w) { return v < w.arrive_t; });
    if (it == trajectory.end()) return last.pos;
    const Waypoint& b = *it;
    const Waypoint& a = *(it - 1);
    if (t == a.arrive_t) return a.pos;
    const double f = (t - a.arrive_t) / (b.arrive_t - a.arrive_t);
    return a.pos + (b.pos - a.pos) * f;
}

Vec2 Cursor::at(double t) {
    const auto& tr = *traj_;
    if (tr.size() == 1 || t <= tr.front().arrive_t) return tr.front().pos;
    if (t >= tr.back().arrive_t) return tr.back().pos;
    if (t < tr[seg_].arrive_t) seg_ = 0;
    while (seg_ + 1 < tr.size() && tr[seg_ + 1].arrive_t <= t) ++seg_;
    if (seg_ + 1 >= tr.size()) return tr.back().pos;
    const Waypoint& a = tr[seg_];
    const Waypoint& b = tr[seg_ + 1];
    const double f = (t - a.arrive_t) / (b.arrive_t - a.arrive_t);
    return a.pos + (b.pos - a.pos) * f;
}

namespace {

constexpr double kMinLeg = 1.0;  // m; shorter random-waypoint legs are redrawn

Trajectory random_waypoint(const MobilityConfig& cfg, Rng& rng, double horizon) {
    Trajectory tr;
    Vec2 pos{rng.uniform(0.0, cfg.area.width), rng.uniform(0.0, cfg.area.height)};
    double t = 0.0;
    tr.push_back({pos, t});
    while (t < horizon) {
        Vec2 dest;
        double leg;
        do {
            dest = {rng.uniform(0.0, cfg.area.width), rng.uniform(0.0, cfg.area.height)};
            leg = distance(pos, dest);
        } while (leg < kMinLeg);
        t += leg / cfg.speed;
        tr.push_back({dest, t});
        pos = dest;
        if (cfg.pause > 0.0 && t < horizon) {
            t += cfg.pause;
            tr.push_back({pos, t});
        }
    }
    return tr;
}

// Manhattan grid: intersections at integer multiples of the spacing.
Trajectory road_grid(const MobilityConfig& cfg, Rng& rng, double horizon) {
    const double s = cfg.grid_spacing;
    const auto nx = static_cast<std::int64_t>(std::floor(cfg.area.width / s + 1e-9));
    const auto ny = static_cast<std::int64_t>(std::floor(cfg.area.height / s + 1e-9));
    const std::int64_t horizontal_edges = (ny + 1) * nx;
    const std::int64_t vertical_edges = (nx + 1) * ny;

    // Start uniformly on the edge set, heading toward one end of the edge.
    const auto edge = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(horizontal_edges + vertical_edges)));
    const double frac = rng.uniform();
    const bool forward = rng.below(2) == 1;
    Vec2 pos;
    std::int64_t ix, iy;  // target intersection
    if (edge < horizontal_edges) {
        const std::int64_t row = edge / nx, col = edge % nx;
        pos = {(static_cast<double>(col) + frac) * s, static_cast<double>(row) * s};
        ix = forward ? col + 1 : col;
        iy = row;
    } else {
        const std::int64_t e = edge - horizontal_edges;
        const std::int64_t col = e / ny, row = e % ny;
        pos = {static_cast<double>(col) * s, (static_cast<double>(row) + frac) * s};
        ix = col;
        iy = forward ? row + 1 : row;
    }

    Trajectory tr;
    double t = 0.0;
    tr.push_back({pos, t});
    std::int64_t dx = 0, dy = 0;
    while (t < horizon) {
        const Vec2 target{static_cast<double>(ix) * s, static_cast<double>(iy) * s};
        const double leg = distance(pos, target);
        if (leg > 0.0) {
            t += leg / cfg.speed;
            tr.push_back({target, t});
            dx = (target.x > pos.x) - (target.x < pos.x);
            dy = (target.y > pos.y) - (target.y < pos.y);
            pos = target;
            if (cfg.pause > 0.0 && t < horizon) {
                t += cfg.pause;
                tr.push_back({pos, t});
            }
        }
        static constexpr std::array<std::array<std::int64_t, 2>, 4> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        std::array<std::array<std::int64_t, 2>, 4> options{};
        std::size_t n = 0;
        for (const auto& d : kDirs) {
            const std::int64_t jx = ix + d[0], jy = iy + d[1];
            if (jx < 0 || jy < 0 || jx > nx || jy > ny) continue;
            if (d[0] == -dx && d[1] == -dy && (dx != 0 || dy != 0)) continue;  // no U-turn
            options[n++] = d;
        }
        if (n == 0) options[n++] = {-dx, -dy};  // dead end
        const auto& pick = options[rng.below(n)];
        ix += pick[0];
        iy += pick[1];
    }
    return tr;
}

}  // namespace

Trajectory generate_trajectory(const MobilityConfig& cfg, NodeId node, double horizon) {
    auto problems = check(cfg);
    if (!(horizon > 0.0)) problems.emplace_back("horizon must be positive");
    if (!problems.empty()) throw ConfigError(std::move(problems));

    Rng rng(hash_keys({cfg.seed, 0x6d6f62ULL, static_cast<std::uint64_t>(node)}));
    switch (cfg.model) {
        case Model::Static:
            return {{Vec2{rng.uniform(0.0, cfg.area.width), rng.uniform(0.0, cfg.area.height)}, 0.0}};
        case Model::RandomWaypoint: return random_waypoint(cfg, rng, horizon);
        case Model::RoadGrid: return road_grid(cfg, rng, horizon);
    }
    throw ConfigError("unknown mobility model");
}

void write_trajectories(std::ostream& out, const std::map<NodeId, Trajectory>& trajectories) {
    for (const auto& [id, tr] : trajectories)
        for (const auto& w : tr) out << fmt::format("{} {:.17g} {:.17g} {:.17g}\n", id, w.arrive_t, w.pos.x, w.pos.y);
}

std::map<NodeId, Trajectory> read_trajectories(std::istream& in) {
    std::map<NodeId, Trajectory> out;
    std::vector<std::string> problems;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        NodeId id;
        Waypoint w;
        std::string extra;
        if (!(row >> id >> w.arrive_t >> w.pos.x >> w.pos.y) || (row >> extra)) {
            problems.push_back(fmt::format("line {}: expected `node_id t x y`", lineno));
            continue;
        }
        auto& tr = out[id];
        if (!tr.empty() && !(w.arrive_t > tr.back().arrive_t)) {
            problems.push_back(fmt::format("line {}: node {} waypoint times must strictly increase", lineno, id));
            continue;
        }
        tr.push_back(w);
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return out;
}

}  // namespace manetsim::mobility
