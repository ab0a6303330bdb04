#include "manetsim/mobility.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace manetsim;
using namespace manetsim::mobility;

namespace {

bool on_multiple(double v, double s) {
    return std::abs(v / s - std::round(v / s)) < 1e-9;
}

}  // namespace

TEST(Mobility, ModelNames) {
    EXPECT_EQ(parse_model("rwp"), Model::RandomWaypoint);
    EXPECT_EQ(parse_model("road_grid"), Model::RoadGrid);
    EXPECT_EQ(parse_model("static"), Model::Static);
    EXPECT_FALSE(parse_model("brownian"));
    for (Model m : {Model::Static, Model::RandomWaypoint, Model::RoadGrid}) EXPECT_EQ(parse_model(to_string(m)), m);
}

TEST(Mobility, DefaultSpeedIs40Kph) {
    EXPECT_NEAR(kDefaultSpeed, 11.111111111111111, 1e-12);
    EXPECT_EQ(MobilityConfig{}.speed, kDefaultSpeed);
}

TEST(Mobility, CheckReportsAllProblems) {
    MobilityConfig cfg;
    cfg.model = Model::RoadGrid;
    cfg.area = {0.0, 100.0};
    cfg.speed = 0.0;
    cfg.pause = -1.0;
    EXPECT_GE(check(cfg).size(), 3u);
    EXPECT_TRUE(check(MobilityConfig{}).empty());
    EXPECT_THROW((void)generate_trajectory(cfg, 0, 10.0), ConfigError);
    EXPECT_THROW((void)generate_trajectory(MobilityConfig{}, 0, 0.0), ConfigError);
}

TEST(Mobility, PositionInterpolates) {
    const Trajectory tr{{{0.0, 0.0}, 0.0}, {{10.0, 0.0}, 1.0}, {{10.0, 20.0}, 3.0}};
    EXPECT_EQ(position_at(tr, 0.0), (Vec2{0.0, 0.0}));
    EXPECT_EQ(position_at(tr, 0.5), (Vec2{5.0, 0.0}));
    EXPECT_EQ(position_at(tr, 1.0), (Vec2{10.0, 0.0}));
    EXPECT_EQ(position_at(tr, 2.0), (Vec2{10.0, 10.0}));
    EXPECT_EQ(position_at(tr, 3.0), (Vec2{10.0, 20.0}));
    EXPECT_THROW((void)position_at(tr, 3.5), std::out_of_range);
    EXPECT_THROW((void)position_at(tr, -0.1), std::out_of_range);
    const Trajectory parked{{{4.0, 5.0}, 0.0}};
    EXPECT_EQ(position_at(parked, 1e6), (Vec2{4.0, 5.0}));
}

TEST(Mobility, CursorMatchesBinarySearch) {
    MobilityConfig cfg;
    const auto tr = generate_trajectory(cfg, 3, 200.0);
    Cursor c(tr);
    for (double t = 0.0; t <= 200.0; t += 0.1) {
        const Vec2 a = c.at(t), b = position_at(tr, t);
        EXPECT_NEAR(a.x, b.x, 1e-9);
        EXPECT_NEAR(a.y, b.y, 1e-9);
    }
}

TEST(Mobility, RandomWaypointStaysInAreaAtConstantSpeed) {
    MobilityConfig cfg;
    cfg.pause = 2.0;
    for (NodeId n = 0; n < 20; ++n) {
        const auto tr = generate_trajectory(cfg, n, 900.0);
        ASSERT_GE(tr.size(), 2u);
        EXPECT_EQ(tr.front().arrive_t, 0.0);
        EXPECT_GE(tr.back().arrive_t, 900.0);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            EXPECT_TRUE(cfg.area.contains(tr[i].pos, 1e-9));
            if (i == 0) continue;
            const double dt = tr[i].arrive_t - tr[i - 1].arrive_t;
            const double leg = distance(tr[i].pos, tr[i - 1].pos);
            ASSERT_GT(dt, 0.0);
            if (leg == 0.0)
                EXPECT_NEAR(dt, cfg.pause, 1e-9);
            else
                EXPECT_NEAR(leg / dt, cfg.speed, 1e-9);
        }
    }
}

TEST(Mobility, Deterministic) {
    MobilityConfig cfg;
    cfg.seed = 42;
    EXPECT_EQ(generate_trajectory(cfg, 5, 300.0), generate_trajectory(cfg, 5, 300.0));
    EXPECT_NE(generate_trajectory(cfg, 5, 300.0), generate_trajectory(cfg, 6, 300.0));
    auto other = cfg;
    other.seed = 43;
    EXPECT_NE(generate_trajectory(cfg, 5, 300.0), generate_trajectory(other, 5, 300.0));
}

TEST(Mobility, RoadGridFollowsStreets) {
    MobilityConfig cfg;
    cfg.model = Model::RoadGrid;
    cfg.area = {1500.0, 1500.0};
    for (NodeId n = 0; n < 20; ++n) {
        const auto tr = generate_trajectory(cfg, n, 900.0);
        ASSERT_GE(tr.size(), 3u);
        // Start lies on some street.
        EXPECT_TRUE(on_multiple(tr[0].pos.x, 200.0) || on_multiple(tr[0].pos.y, 200.0));
        for (std::size_t i = 1; i < tr.size(); ++i) {
            const Vec2 a = tr[i - 1].pos, b = tr[i].pos;
            EXPECT_TRUE(on_multiple(b.x, 200.0) && on_multiple(b.y, 200.0)) << "waypoint " << i;
            EXPECT_TRUE(cfg.area.contains(b, 1e-9));
            EXPECT_TRUE(a.x == b.x || a.y == b.y) << "segments are axis-aligned";
            EXPECT_LE(distance(a, b), 200.0 + 1e-9);
            EXPECT_NEAR(distance(a, b) / (tr[i].arrive_t - tr[i - 1].arrive_t), cfg.speed, 1e-9);
            if (i >= 2) {
                const Vec2 prev = tr[i - 2].pos;
                EXPECT_NE(prev, b) << "no U-turns on an open grid";
            }
        }
    }
}

TEST(Mobility, StaticParks) {
    MobilityConfig cfg;
    cfg.model = Model::Static;
    const auto tr = generate_trajectory(cfg, 0, 100.0);
    ASSERT_EQ(tr.size(), 1u);
    EXPECT_EQ(position_at(tr, 50.0), tr[0].pos);
}

TEST(Mobility, TraceRoundTrip) {
    std::map<NodeId, Trajectory> in;
    MobilityConfig cfg;
    for (NodeId n = 0; n < 3; ++n) in[n] = generate_trajectory(cfg, n, 100.0);
    std::stringstream ss;
    write_trajectories(ss, in);
    EXPECT_EQ(read_trajectories(ss), in);
}

TEST(Mobility, TraceReaderReportsEveryBadLine) {
    std::istringstream in("# header\n0 0 1 1\n0 0 2 2\n\n1 0 x 1\n1 0 1 1 9\n");
    try {
        (void)read_trajectories(in);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.problems().size(), 3u);
    }
}
