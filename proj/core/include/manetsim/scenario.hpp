#pragma once

#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/radio.hpp"
#include "manetsim/routing/presets.hpp"
#include "manetsim/simulator.hpp"
#include "manetsim/traffic.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manetsim {

enum class NetType { Manet, Vanet };

std::string_view to_string(NetType n) noexcept;
std::optional<NetType> parse_net_type(std::string_view s) noexcept;

/// A fully specified experiment cell.
struct Scenario {
    NetType net = NetType::Manet;
    routing::Preset preset;
    int node_count = 10;
    std::uint64_t seed = 1;
    double horizon = 900.0;
    mobility::MobilityConfig mobility;
    RadioConfig radio;
    TrafficConfig traffic;
    std::vector<FlowConfig> flows;  // used instead of generated traffic when non-empty
    routing::ProtocolParams params;

    /// Defaults for a network type: MANET is random waypoint on 1000 x 1000 m
    /// with the 802.11 profile, VANET a 200 m road grid on 1500 x 1500 m with
    /// the 802.11p profile.
    static Scenario defaults(NetType net, routing::Preset preset = {});

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Every problem with the scenario; empty when runnable.
std::vector<std::string> check(const Scenario& s);

/// Switches network type, replacing mobility and radio with that type's defaults.
Scenario with_net(Scenario s, NetType net);
/// Switches preset, replacing protocol parameters with that preset's values.
Scenario with_preset(Scenario s, routing::Preset preset);

/// Resolves trajectories, flows and the agent factory. Throws ConfigError.
SimSetup build_setup(const Scenario& s, std::ostream* trace = nullptr);

RunMetrics run(const Scenario& s, std::ostream* trace = nullptr);
ResultRow run_row(const Scenario& s, std::ostream* trace = nullptr);

}  // namespace manetsim
