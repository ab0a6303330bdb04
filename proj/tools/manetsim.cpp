// manetsim command-line front end: run, sweep, forecast, validate.

#include "manetsim/config.hpp"
#include "manetsim/linkmath.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/scenario.hpp"
#include "manetsim/sweep.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace manetsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario load_scenario(const std::string& path) {
    if (path.empty()) return Scenario::defaults(NetType::Manet);
    return config::parse(read_file(path));
}

void report(const ConfigError& e) {
    for (const auto& p : e.problems()) fmt::print(stderr, "error: {}\n", p);
}

// "1,2,5" or "1-5" or "10-70:10".
template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        long long lo = 0, hi = 0, step = 1;
        char dash = 0, colon = 0;
        std::istringstream in(item);
        if (!(in >> lo)) throw ConfigError(fmt::format("bad {} list '{}'", what, text));
        hi = lo;
        if (in >> dash) {
            if (dash != '-' || !(in >> hi)) throw ConfigError(fmt::format("bad {} list '{}'", what, text));
            if (in >> colon && (colon != ':' || !(in >> step) || step <= 0))
                throw ConfigError(fmt::format("bad {} list '{}'", what, text));
        }
        if (hi < lo) throw ConfigError(fmt::format("bad {} range '{}'", what, item));
        for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<T>(v));
    }
    if (out.empty()) throw ConfigError(fmt::format("empty {} list", what));
    return out;
}

std::vector<routing::Preset> parse_presets(const std::string& text) {
    if (text == "all") return routing::all_presets();
    std::vector<routing::Preset> out;
    std::vector<std::string> problems;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (auto p = routing::parse_preset(item))
            out.push_back(*p);
        else
            problems.push_back(fmt::format("unknown preset '{}' (valid: {})", item, routing::preset_names()));
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return out;
}

std::vector<NetType> parse_nets(const std::string& text) {
    if (text == "both") return {NetType::Manet, NetType::Vanet};
    std::vector<NetType> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        auto n = parse_net_type(item);
        if (!n) throw ConfigError(fmt::format("unknown net type '{}' (manet, vanet, both)", item));
        out.push_back(*n);
    }
    return out;
}

void write_rows(const std::string& out_path, const std::vector<ResultRow>& rows) {
    if (out_path.empty() || out_path == "-") {
        write_csv(std::cout, rows);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", out_path));
    write_csv(out, rows);
}

struct Common {
    std::string config;
    std::string out;
    std::string trace;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

int cmd_run(const Common& c, std::optional<int> nodes, const std::string& preset, const std::string& net) {
    Scenario s = load_scenario(c.config);
    if (!net.empty()) s = with_net(s, parse_nets(net).at(0));
    if (!preset.empty()) s = with_preset(s, parse_presets(preset).at(0));
    if (nodes) s.node_count = *nodes;
    if (c.seed) s.seed = *c.seed;
    if (auto problems = check(s); !problems.empty()) throw ConfigError(std::move(problems));

    ResultRow row;
    if (!c.trace.empty()) {
        fs::create_directories(c.trace);
        std::ofstream trace(fs::path(c.trace) / trace_file_name(s));
        if (!trace) throw std::runtime_error("cannot open trace file");
        row = run_row(s, &trace);
    } else {
        row = run_row(s);
    }
    write_rows(c.out, {row});
    return kExitOk;
}

int cmd_sweep(const Common& c, const std::string& nodes, const std::string& seeds, const std::string& presets,
              const std::string& nets) {
    SweepSpec spec;
    spec.base = load_scenario(c.config);
    spec.node_counts = parse_list<int>(nodes, "node count");
    spec.seeds = c.seed ? std::vector<std::uint64_t>{*c.seed} : parse_list<std::uint64_t>(seeds, "seed");
    spec.presets = parse_presets(presets);
    if (!nets.empty()) spec.nets = parse_nets(nets);
    spec.jobs = c.jobs;
    if (!c.trace.empty()) spec.trace_dir = c.trace;

    const auto result = sweep(spec);
    write_rows(c.out, result.rows);
    for (const auto& f : result.failures) fmt::print(stderr, "run failed: {}: {}\n", trace_file_name(f.scenario), f.error);
    return result.failures.empty() ? kExitOk : kExitRunFailure;
}

std::string fmt_value(double v) {
    if (std::isinf(v)) return "inf";
    return fmt::format("{:.6f}", v);
}

int cmd_forecast(const std::string& path, double range, double lookahead) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw ConfigError(fmt::format("cannot read '{}'", path));
        in = &file;
    }
    std::vector<linkmath::DistanceSample> samples;
    int line_no = 0;
    for (std::string line; std::getline(*in, line);) {
        ++line_no;
        if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        linkmath::DistanceSample s;
        if (!(ls >> s.t)) continue;
        std::string extra;
        if (!(ls >> s.dist) || (ls >> extra)) throw ConfigError(fmt::format("line {}: expected 't dist'", line_no));
        samples.push_back(s);
    }
    if (samples.size() < 3) throw ConfigError("forecast needs at least three samples");

    fmt::print("# t v_rel expiry availability\n");
    for (std::size_t i = 2; i < samples.size(); ++i) {
        const auto& s2 = samples[i];
        if (s2.dist > range) {
            const auto motion = linkmath::estimate_speed(samples[i - 2], samples[i - 1], s2);
            if (motion.valid)
                fmt::print("{:.6f} {:.6f} down 0\n", s2.t, motion.v_rel);
            else
                fmt::print("{:.6f} invalid\n", s2.t);
            continue;
        }
        const auto f = linkmath::forecast(samples[i - 2], samples[i - 1], s2, range, lookahead);
        if (!f.motion.valid) {
            fmt::print("{:.6f} invalid\n", s2.t);
        } else {
            fmt::print("{:.6f} {:.6f} {} {:.6f}\n", s2.t, f.motion.v_rel, fmt_value(f.link.expiry), f.link.prob);
        }
    }
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const auto problems = config::validate(read_file(path));
    if (problems.empty()) {
        fmt::print("{}: ok\n", path);
        return kExitOk;
    }
    for (const auto& p : problems) fmt::print(stderr, "error: {}\n", p);
    return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event MANET/VANET routing simulator"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "Scenario config file (key = value with [sections])");
        sub->add_option("--out", common.out, "CSV output path (default stdout)");
        sub->add_option("--trace", common.trace, "Directory for per-run trace files");
        sub->add_option("--seed", common.seed, "Override the seed");
    };

    auto* run = app.add_subcommand("run", "Run one scenario");
    add_common(run);
    std::optional<int> run_nodes;
    std::string run_preset, run_net;
    run->add_option("--nodes", run_nodes, "Override the node count");
    run->add_option("--preset", run_preset, "Override the preset");
    run->add_option("--net", run_net, "Override the net type (manet, vanet)");

    auto* sw = app.add_subcommand("sweep", "Run the cartesian product of node counts, seeds, presets and net types");
    add_common(sw);
    std::string nodes = "10-70:10", seeds = "1-5", presets = "all", nets;
    sw->add_option("--jobs", common.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    sw->add_option("--nodes", nodes, "Node counts, e.g. 10,20 or 10-70:10")->capture_default_str();
    sw->add_option("--seeds", seeds, "Seeds, e.g. 1-5")->capture_default_str();
    sw->add_option("--presets", presets, "Presets or 'all'")->capture_default_str();
    sw->add_option("--net", nets, "manet, vanet or both (default: config net type)");

    auto* fc = app.add_subcommand("forecast", "Link forecasts from a 't dist' sample file");
    std::string samples;
    double range = 250.0, lookahead = 1.0;
    fc->add_option("samples", samples, "Sample file ('-' for stdin)")->required();
    fc->add_option("--range", range, "Radio range in m")->capture_default_str()->check(CLI::PositiveNumber);
    fc->add_option("--at", lookahead, "Availability lookahead in s")->capture_default_str()->check(CLI::NonNegativeNumber);

    auto* val = app.add_subcommand("validate", "Check a config and report every problem");
    std::string validate_path;
    val->add_option("--config,config", validate_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run) return cmd_run(common, run_nodes, run_preset, run_net);
        if (*sw) return cmd_sweep(common, nodes, seeds, presets, nets);
        if (*fc) return cmd_forecast(samples, range, lookahead);
        if (*val) return cmd_validate(validate_path);
    } catch (const ConfigError& e) {
        report(e);
        return kExitConfigError;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitRunFailure;
    }
    return kExitOk;
}
