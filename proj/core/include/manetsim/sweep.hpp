#pragma once

#include "manetsim/metrics.hpp"
#include "manetsim/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace manetsim {

struct SweepSpec {
    Scenario base;
    std::vector<int> node_counts;
    std::vector<std::uint64_t> seeds;
    std::vector<routing::Preset> presets;
    /// Empty means the base scenario's net type only.
    std::vector<NetType> nets;
    int jobs = 1;
    /// Writes one trace file per run when set.
    std::optional<std::filesystem::path> trace_dir;
};

struct SweepFailure {
    Scenario scenario;
    std::string error;
};

struct SweepResult {
    std::vector<ResultRow> rows;  // in cell order, failures omitted
    std::vector<SweepFailure> failures;
};

/// Cells in their fixed order: net, preset, node count, seed. A preset equal
/// to the base preset keeps the base protocol parameters, and the base net
/// type keeps the base mobility and radio; other values take their defaults.
std::vector<Scenario> expand(const SweepSpec& spec);

/// Trace file name of a cell, e.g. `aodv-def_manet_n10_s1.trace`.
std::string trace_file_name(const Scenario& s);

/// Runs every cell on up to `jobs` threads. Results do not depend on `jobs`.
/// Throws ConfigError for empty lists or invalid cells.
SweepResult sweep(const SweepSpec& spec);

}  // namespace manetsim
