#include "manetsim/scenario.hpp"

namespace manetsim {

std::string_view to_string(NetType n) noexcept {
    return n == NetType::Manet ? "manet" : "vanet";
}

std::optional<NetType> parse_net_type(std::string_view s) noexcept {
    if (s == "manet") return NetType::Manet;
    if (s == "vanet") return NetType::Vanet;
    return std::nullopt;
}

Scenario Scenario::defaults(NetType net, routing::Preset preset) {
    Scenario s;
    s.preset = preset;
    s.params = routing::ProtocolParams::for_preset(preset);
    return with_net(std::move(s), net);
}

Scenario with_net(Scenario s, NetType net) {
    s.net = net;
    s.mobility = mobility::MobilityConfig{};
    if (net == NetType::Vanet) {
        s.mobility.model = mobility::Model::RoadGrid;
        s.mobility.area = Area{1500.0, 1500.0};
        s.radio = RadioConfig::preset(MacProfile::Mac80211p);
    } else {
        s.radio = RadioConfig::preset(MacProfile::Mac80211);
    }
    return s;
}

Scenario with_preset(Scenario s, routing::Preset preset) {
    s.preset = preset;
    s.params = routing::ProtocolParams::for_preset(preset);
    return s;
}

std::vector<std::string> check(const Scenario& s) {
    std::vector<std::string> problems;
    auto add = [&](std::vector<std::string> more) {
        problems.insert(problems.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    if (s.node_count < 2) problems.emplace_back("node_count must be >= 2");
    if (!(s.horizon > 0.0)) problems.emplace_back("horizon must be > 0");
    add(mobility::check(s.mobility));
    add(check(s.radio));
    add(routing::check(s.params, s.preset.protocol));
    if (s.flows.empty()) {
        const auto& t = s.traffic;
        if (t.flows < 1) problems.emplace_back("traffic.flows must be >= 1");
        if (!(t.rate > 0.0)) problems.emplace_back("traffic.rate must be > 0");
        if (t.packet_size == 0) problems.emplace_back("traffic.packet_size must be > 0");
        if (!(t.start_min >= 0.0) || !(t.start_max >= t.start_min))
            problems.emplace_back("traffic start window must satisfy 0 <= start_min <= start_max");
        else if (s.horizon > 0.0 && !(t.start_max < s.horizon))
            problems.emplace_back("traffic.start_max must be < horizon");
        if (s.node_count >= 2 && t.flows > s.node_count * (s.node_count - 1))
            problems.emplace_back("traffic.flows exceeds the number of distinct node pairs");
    } else {
        for (const auto& f : s.flows) add(check(f, s.node_count, s.horizon));
    }
    return problems;
}

SimSetup build_setup(const Scenario& s, std::ostream* trace) {
    if (auto problems = check(s); !problems.empty()) throw ConfigError(std::move(problems));
    SimSetup setup;
    auto mob = s.mobility;
    mob.seed = s.seed;
    setup.trajectories.reserve(static_cast<std::size_t>(s.node_count));
    for (NodeId n = 0; n < s.node_count; ++n) setup.trajectories.push_back(mobility::generate_trajectory(mob, n, s.horizon));
    setup.radio = s.radio;
    setup.flows = s.flows.empty() ? generate_flows(s.traffic, s.node_count, s.horizon, s.seed) : s.flows;
    setup.horizon = s.horizon;
    setup.seed = s.seed;
    setup.make_agent = routing::make_agent_factory(s.preset.protocol, s.params);
    setup.trace = trace;
    return setup;
}

RunMetrics run(const Scenario& s, std::ostream* trace) {
    Simulator sim(build_setup(s, trace));
    return sim.run();
}

ResultRow run_row(const Scenario& s, std::ostream* trace) {
    ResultRow row;
    row.protocol = std::string(routing::to_string(s.preset.protocol));
    row.preset = s.preset.modified ? "mod" : "def";
    row.net_type = std::string(to_string(s.net));
    row.nodes = s.node_count;
    row.seed = s.seed;
    row.metrics = run(s, trace);
    return row;
}

}  // namespace manetsim
