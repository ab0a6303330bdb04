#include "manetsim/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

namespace manetsim {

std::vector<Scenario> expand(const SweepSpec& spec) {
    std::vector<std::string> problems;
    if (spec.node_counts.empty()) problems.emplace_back("sweep needs at least one node count");
    if (spec.seeds.empty()) problems.emplace_back("sweep needs at least one seed");
    if (spec.presets.empty()) problems.emplace_back("sweep needs at least one preset");
    if (spec.jobs < 1) problems.emplace_back("jobs must be >= 1");
    if (!problems.empty()) throw ConfigError(std::move(problems));

    const std::vector<NetType> nets = spec.nets.empty() ? std::vector<NetType>{spec.base.net} : spec.nets;
    std::vector<Scenario> cells;
    for (NetType net : nets) {
        const Scenario by_net = net == spec.base.net ? spec.base : with_net(spec.base, net);
        for (const auto& preset : spec.presets) {
            const Scenario by_preset = preset == spec.base.preset ? by_net : with_preset(by_net, preset);
            for (int n : spec.node_counts) {
                for (std::uint64_t seed : spec.seeds) {
                    Scenario s = by_preset;
                    s.node_count = n;
                    s.seed = seed;
                    cells.push_back(std::move(s));
                }
            }
        }
    }
    for (const auto& s : cells)
        for (auto& p : check(s))
            problems.push_back(fmt::format("{}: {}", trace_file_name(s), p));
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cells;
}

std::string trace_file_name(const Scenario& s) {
    return fmt::format("{}_{}_n{}_s{}.trace", routing::preset_name(s.preset), to_string(s.net), s.node_count, s.seed);
}

SweepResult sweep(const SweepSpec& spec) {
    const auto cells = expand(spec);
    if (spec.trace_dir) std::filesystem::create_directories(*spec.trace_dir);

    std::vector<std::optional<ResultRow>> rows(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                if (spec.trace_dir) {
                    std::ofstream trace(*spec.trace_dir / trace_file_name(cells[i]));
                    if (!trace) throw std::runtime_error("cannot open trace file");
                    rows[i] = run_row(cells[i], &trace);
                } else {
                    rows[i] = run_row(cells[i]);
                }
            } catch (const std::exception& e) {
                errors[i] = e.what();
                if (errors[i].empty()) errors[i] = "unknown error";
            }
        }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), cells.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SweepResult result;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (rows[i])
            result.rows.push_back(std::move(*rows[i]));
        else
            result.failures.push_back({cells[i], errors[i]});
    }
    return result;
}

}  // namespace manetsim
