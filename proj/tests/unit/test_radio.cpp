#include "manetsim/radio.hpp"
#include "manetsim/rng.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace manetsim;

TEST(Radio, ProfilesDiffer) {
    const auto a = RadioConfig::preset(MacProfile::Mac80211);
    const auto p = RadioConfig::preset(MacProfile::Mac80211p);
    EXPECT_EQ(a.range, 250.0);
    EXPECT_EQ(p.range, 250.0);
    EXPECT_LT(p.base_delay, a.base_delay);
    EXPECT_LT(p.loss_base, a.loss_base);
    EXPECT_LE(p.per_contender_delay, a.per_contender_delay);
    EXPECT_LE(p.loss_per_contender, a.loss_per_contender);
    EXPECT_EQ(parse_mac("802.11p"), MacProfile::Mac80211p);
    EXPECT_EQ(parse_mac(to_string(MacProfile::Mac80211)), MacProfile::Mac80211);
    EXPECT_FALSE(parse_mac("wifi"));
}

TEST(Radio, DelayAndLossCurves) {
    RadioConfig r;
    r.base_delay = 0.002;
    r.per_contender_delay = 0.001;
    r.loss_base = 0.1;
    r.loss_per_contender = 0.3;
    EXPECT_DOUBLE_EQ(hop_delay(r, 0), 0.002);
    EXPECT_DOUBLE_EQ(hop_delay(r, 3), 0.005);
    EXPECT_DOUBLE_EQ(loss_probability(r, 0), 0.1);
    EXPECT_DOUBLE_EQ(loss_probability(r, 2), 0.7);
    EXPECT_EQ(loss_probability(r, 10), 1.0);
}

TEST(Radio, CheckRejectsNonsense) {
    RadioConfig r;
    r.range = 0.0;
    r.base_delay = -1.0;
    r.loss_base = 2.0;
    EXPECT_GE(check(r).size(), 3u);
    EXPECT_TRUE(check(RadioConfig{}).empty());
}

TEST(Radio, RangeIsClosedBall) {
    EXPECT_TRUE(in_range({0.0, 0.0}, {250.0, 0.0}, 250.0));
    EXPECT_FALSE(in_range({0.0, 0.0}, {250.0000001, 0.0}, 250.0));
    EXPECT_TRUE(in_range({0.0, 0.0}, {150.0, 200.0}, 250.0));
}

TEST(Radio, UnitDiskMatchesBruteForce) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec2> pts;
        const int n = 2 + static_cast<int>(rng.below(40));
        for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)});
        const auto g = unit_disk_graph(pts, 250.0);
        const auto oracle = manetsim::testing::unit_disk(pts, 250.0);
        ASSERT_EQ(g.size(), oracle.size());
        for (int i = 0; i < n; ++i) {
            const auto& got = g[static_cast<std::size_t>(i)];
            EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
            EXPECT_EQ(std::set<NodeId>(got.begin(), got.end()), oracle[static_cast<std::size_t>(i)]);
            EXPECT_EQ(neighbors_of(pts, i, 250.0), got);
        }
    }
}
