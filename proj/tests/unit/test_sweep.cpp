#include "manetsim/sweep.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <sstream>

using namespace manetsim;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.base = Scenario::defaults(NetType::Vanet);
    spec.base.horizon = 40.0;
    spec.base.traffic.flows = 3;
    spec.node_counts = {6, 8};
    spec.seeds = {1, 2};
    spec.presets = {*routing::parse_preset("aodv-def"), *routing::parse_preset("olsr-mod")};
    return spec;
}

std::string csv(const SweepResult& r) {
    std::ostringstream out;
    write_csv(out, r.rows);
    return out.str();
}

}  // namespace

TEST(Sweep, FullGridSize) {
    SweepSpec spec;
    spec.base = Scenario::defaults(NetType::Manet);
    spec.node_counts = {10, 20, 30, 40, 50, 60, 70};
    spec.seeds = {1, 2, 3, 4, 5};
    spec.presets = routing::all_presets();
    const auto cells = expand(spec);
    EXPECT_EQ(cells.size(), 210u);
    std::set<std::string> names;
    for (const auto& c : cells) names.insert(trace_file_name(c));
    EXPECT_EQ(names.size(), 210u);

    spec.nets = {NetType::Manet, NetType::Vanet};
    EXPECT_EQ(expand(spec).size(), 420u);
}

TEST(Sweep, CellOrder) {
    auto spec = small_spec();
    spec.nets = {NetType::Manet, NetType::Vanet};
    const auto cells = expand(spec);
    ASSERT_EQ(cells.size(), 16u);
    EXPECT_EQ(trace_file_name(cells[0]), "aodv-def_manet_n6_s1.trace");
    EXPECT_EQ(trace_file_name(cells[1]), "aodv-def_manet_n6_s2.trace");
    EXPECT_EQ(trace_file_name(cells[2]), "aodv-def_manet_n8_s1.trace");
    EXPECT_EQ(trace_file_name(cells[4]), "olsr-mod_manet_n6_s1.trace");
    EXPECT_EQ(trace_file_name(cells[8]), "aodv-def_vanet_n6_s1.trace");
}

TEST(Sweep, BaseOverridesKeptOnlyForBaseValues) {
    auto spec = small_spec();
    spec.base.radio.range = 300.0;
    spec.base.params.aodv.ttl_start = 2;
    spec.nets = {NetType::Vanet, NetType::Manet};
    spec.presets = {*routing::parse_preset("aodv-def"), *routing::parse_preset("aodv-mod")};
    for (const auto& c : expand(spec)) {
        EXPECT_EQ(c.radio.range == 300.0, c.net == NetType::Vanet);
        EXPECT_EQ(c.params.aodv.ttl_start == 2, !c.preset.modified);
        EXPECT_EQ(c.horizon, 40.0);
    }
}

TEST(Sweep, SingleCellYieldsOneRow) {
    auto spec = small_spec();
    spec.node_counts = {6};
    spec.seeds = {3};
    spec.presets = {*routing::parse_preset("fsr-def")};
    const auto r = sweep(spec);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(r.rows[0].protocol, "fsr");
    EXPECT_EQ(r.rows[0].preset, "def");
    EXPECT_EQ(r.rows[0].net_type, "vanet");
    EXPECT_EQ(r.rows[0].nodes, 6);
    EXPECT_EQ(r.rows[0].seed, 3u);
}

TEST(Sweep, ResultsIndependentOfJobs) {
    auto spec = small_spec();
    const auto serial = sweep(spec);
    spec.jobs = 3;
    const auto parallel = sweep(spec);
    EXPECT_EQ(serial.rows.size(), 8u);
    EXPECT_EQ(csv(serial), csv(parallel));
}

TEST(Sweep, WritesTraceFiles) {
    auto spec = small_spec();
    spec.node_counts = {6};
    spec.seeds = {1};
    const auto dir = std::filesystem::temp_directory_path() / "manetsim_sweep_traces";
    std::filesystem::remove_all(dir);
    spec.trace_dir = dir;
    sweep(spec);
    EXPECT_TRUE(std::filesystem::exists(dir / "aodv-def_vanet_n6_s1.trace"));
    EXPECT_GT(std::filesystem::file_size(dir / "olsr-mod_vanet_n6_s1.trace"), 0u);
    std::filesystem::remove_all(dir);
}

TEST(Sweep, InvalidSpecsThrow) {
    auto spec = small_spec();
    spec.seeds.clear();
    EXPECT_THROW(expand(spec), ConfigError);
    spec = small_spec();
    spec.node_counts = {6, 1};
    EXPECT_THROW(expand(spec), ConfigError);
    spec = small_spec();
    spec.jobs = 0;
    EXPECT_THROW(sweep(spec), ConfigError);
}
