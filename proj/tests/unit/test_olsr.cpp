#include "manetsim/routing/olsr.hpp"
#include "manetsim/simulator.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace manetsim;
using namespace manetsim::routing;
using namespace manetsim::testing;

namespace {

AgentFactory olsr(OlsrParams p = OlsrParams::def()) {
    return [p](NodeId id) { return std::make_unique<OlsrAgent>(id, p); };
}

void expect_routes_match(Simulator& sim, const Graph& g) {
    const auto hops = all_pairs_hops(g);
    const int n = static_cast<int>(g.size());
    for (NodeId s = 0; s < n; ++s)
        for (NodeId d = 0; d < n; ++d) {
            if (s == d) continue;
            const auto r = sim.agent(s).route(d);
            ASSERT_TRUE(r) << s << "->" << d;
            EXPECT_EQ(r->hops, hops[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)]) << s << "->" << d;
            EXPECT_TRUE(g[static_cast<std::size_t>(s)].contains(r->next_hop));
        }
}

bool covers_two_hop(const Graph& g, NodeId self, const std::set<NodeId>& mprs) {
    const auto& one = g[static_cast<std::size_t>(self)];
    for (NodeId n : one)
        for (NodeId y : g[static_cast<std::size_t>(n)]) {
            if (y == self || one.contains(y)) continue;
            bool covered = false;
            for (NodeId m : mprs) covered = covered || g[static_cast<std::size_t>(m)].contains(y);
            if (!covered) return false;
        }
    return true;
}

std::set<NodeId> mprs_of(const Graph& g, NodeId self) {
    std::map<NodeId, std::set<NodeId>> coverage;
    for (NodeId n : g[static_cast<std::size_t>(self)]) {
        auto& c = coverage[n];
        for (NodeId y : g[static_cast<std::size_t>(n)])
            if (y != self) c.insert(y);
    }
    return select_mprs(g[static_cast<std::size_t>(self)], coverage);
}

// Agent 0 with symmetric links to the given neighbors; those in `selectors`
// have chosen it as MPR.
OlsrAgent linked_agent(FakeContext& ctx, const std::set<NodeId>& neighbors, const std::set<NodeId>& selectors) {
    OlsrAgent a(0, OlsrParams::def());
    for (NodeId n : neighbors) {
        msg::OlsrHello h;
        h.heard = {0};
        if (selectors.contains(n)) h.mprs = {0};
        a.on_control(ctx, control_packet(n, h), h);
    }
    return a;
}

}  // namespace

TEST(OlsrParams, Presets) {
    EXPECT_EQ(OlsrParams::def().hello_interval, 2.0);
    EXPECT_EQ(OlsrParams::def().tc_interval, 5.0);
    EXPECT_EQ(OlsrParams::mod().hello_interval, 1.0);
    EXPECT_EQ(OlsrParams::mod().tc_interval, 3.0);
    OlsrParams bad;
    bad.hold_time_multiplier = 2.0;
    EXPECT_EQ(check(bad).size(), 1u);
}

TEST(Mprs, FullyConnectedNeedsNone) {
    Graph g(4);
    for (NodeId a = 0; a < 4; ++a)
        for (NodeId b = 0; b < 4; ++b)
            if (a != b) g[static_cast<std::size_t>(a)].insert(b);
    EXPECT_TRUE(mprs_of(g, 0).empty());
}

TEST(Mprs, StarLeafPicksCenter) {
    Graph g(5);
    for (NodeId leaf = 1; leaf < 5; ++leaf) {
        g[0].insert(leaf);
        g[static_cast<std::size_t>(leaf)].insert(0);
    }
    EXPECT_EQ(mprs_of(g, 1), std::set<NodeId>{0});
    EXPECT_TRUE(mprs_of(g, 0).empty());
}

TEST(Mprs, UniqueCoverIsAlwaysChosen) {
    // 0 reaches 3 only through 2; 1 and 2 both reach 4.
    std::map<NodeId, std::set<NodeId>> coverage{{1, {4}}, {2, {3, 4}}};
    EXPECT_EQ(select_mprs({1, 2}, coverage), std::set<NodeId>{2});
}

TEST(Mprs, RandomGraphsCoverWithinTwiceMinimum) {
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const int n = 3 + static_cast<int>(rng.below(6));
        const auto g = random_graph(rng, n, 0.4);
        for (NodeId self = 0; self < n; ++self) {
            const auto m = mprs_of(g, self);
            EXPECT_TRUE(covers_two_hop(g, self, m));
            EXPECT_LE(m.size(), 2 * minimum_mpr_cover(g, self));
            for (NodeId x : m) EXPECT_TRUE(g[static_cast<std::size_t>(self)].contains(x));
        }
    }
}

TEST(Olsr, HelloMakesLinkSymmetric) {
    OlsrAgent a(0, OlsrParams::def());
    FakeContext ctx(0, 1.0);
    msg::OlsrHello plain;
    a.on_control(ctx, control_packet(1, plain), plain);
    EXPECT_TRUE(a.symmetric_neighbors(1.0).empty());
    EXPECT_EQ(a.build_hello(1.0).heard, std::vector<NodeId>{1});

    msg::OlsrHello lists_me;
    lists_me.heard = {0};
    a.on_control(ctx, control_packet(1, lists_me), lists_me);
    EXPECT_EQ(a.symmetric_neighbors(1.0), std::set<NodeId>{1});
    ASSERT_TRUE(a.route(1));
    EXPECT_EQ(a.route(1)->hops, 1);
}

TEST(Olsr, TwoHopFromSymmetricLists) {
    OlsrAgent a(0, OlsrParams::def());
    FakeContext ctx(0);
    msg::OlsrHello h;
    h.symmetric = {0, 5, 6};
    a.on_control(ctx, control_packet(1, h), h);
    const auto two = a.two_hop(0.0);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.at(5), std::set<NodeId>{1});
    a.build_hello(0.0);
    EXPECT_EQ(a.mprs(), std::set<NodeId>{1});
    EXPECT_EQ(a.route(6)->next_hop, 1);
    EXPECT_EQ(a.route(6)->hops, 2);
}

TEST(Olsr, TcSuppressedWithoutSelectors) {
    OlsrAgent a(0, OlsrParams::def());
    FakeContext ctx(0);
    a.start(ctx);
    const auto tc_token = ctx.timers[1].token;
    ctx.set_now(5.0);
    a.on_timer(ctx, tc_token);
    EXPECT_TRUE(ctx.control.empty());
    EXPECT_EQ(a.stats().tcs_originated, 0u);
}

TEST(Olsr, TcOriginatedWhenSelected) {
    FakeContext ctx(0);
    auto a = linked_agent(ctx, {1, 2}, {2});
    a.start(ctx);
    const auto tc_token = ctx.timers[1].token;
    a.on_timer(ctx, tc_token);
    ASSERT_EQ(ctx.control.size(), 1u);
    const auto& tc = std::get<msg::OlsrTc>(ctx.control[0].msg);
    EXPECT_EQ(tc.origin, 0);
    EXPECT_EQ(tc.selectors, std::vector<NodeId>{2});
    EXPECT_EQ(ctx.control[0].ttl, 255);
}

TEST(Olsr, OnlySelectorsTrafficIsForwarded) {
    FakeContext ctx(0);
    auto a = linked_agent(ctx, {1, 2}, {1});
    const msg::OlsrTc via_selector{7, 1, 1, {3}};
    a.on_control(ctx, control_packet(1, via_selector, 10), via_selector);
    ASSERT_EQ(ctx.control.size(), 1u);
    EXPECT_EQ(ctx.control[0].ttl, 9);

    const msg::OlsrTc via_other{8, 1, 1, {3}};
    a.on_control(ctx, control_packet(2, via_other, 10), via_other);
    EXPECT_EQ(ctx.control.size(), 1u);
    EXPECT_EQ(a.stats().tcs_forwarded, 1u);
}

TEST(Olsr, DuplicateAndStaleTcDropped) {
    FakeContext ctx(0);
    auto a = linked_agent(ctx, {1}, {1});
    const msg::OlsrTc first{7, 5, 10, {3}};
    a.on_control(ctx, control_packet(1, first, 10), first);
    a.on_control(ctx, control_packet(1, first, 10), first);
    EXPECT_EQ(a.stats().tcs_duplicate, 1u);

    const msg::OlsrTc stale{7, 4, 11, {9}};
    a.on_control(ctx, control_packet(1, stale, 10), stale);
    EXPECT_EQ(a.stats().tcs_stale, 1u);
    EXPECT_EQ(ctx.control.size(), 1u);
    EXPECT_FALSE(a.route(9));
}

TEST(Olsr, TcFromNonSymmetricNeighborIgnored) {
    OlsrAgent a(0, OlsrParams::def());
    FakeContext ctx(0);
    const msg::OlsrTc tc{7, 1, 1, {3}};
    a.on_control(ctx, control_packet(4, tc, 10), tc);
    EXPECT_TRUE(ctx.control.empty());
    EXPECT_FALSE(a.route(7));
}

TEST(Olsr, ChainConverges) {
    for (auto params : {OlsrParams::def(), OlsrParams::mod()}) {
        const auto pts = chain(6, 200.0);
        Simulator sim(static_setup(pts, olsr(params), 100.0));
        sim.run_until(60.0);
        expect_routes_match(sim, unit_disk(pts, 250.0));
    }
}

TEST(Olsr, RandomGraphsConverge) {
    Rng rng(303);
    for (int g = 0; g < 10; ++g) {
        const int n = 4 + static_cast<int>(rng.below(9));
        const auto pts = random_connected_points(rng, n, 700.0, 250.0);
        Simulator sim(static_setup(pts, olsr(), 200.0));
        sim.run_until(120.0);
        expect_routes_match(sim, unit_disk(pts, 250.0));
    }
}

TEST(Olsr, ModifiedSendsMorePackets) {
    auto count = [](OlsrParams p) {
        Simulator sim(static_setup(chain(5, 200.0), olsr(p), 300.0));
        return sim.run().routing_packets;
    };
    EXPECT_GT(count(OlsrParams::mod()), count(OlsrParams::def()));
}
