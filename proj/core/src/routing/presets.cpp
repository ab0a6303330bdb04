#include "manetsim/routing/presets.hpp"

#include <memory>

namespace manetsim::routing {

std::string_view to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::Aodv: return "aodv";
        case Protocol::Fsr: return "fsr";
        case Protocol::Olsr: return "olsr";
    }
    return "?";
}

std::string preset_name(Preset p) {
    return std::string(to_string(p.protocol)) + (p.modified ? "-mod" : "-def");
}

std::vector<Preset> all_presets() {
    std::vector<Preset> out;
    for (Protocol proto : {Protocol::Aodv, Protocol::Fsr, Protocol::Olsr})
        for (bool modified : {false, true}) out.push_back({proto, modified});
    return out;
}

std::optional<Preset> parse_preset(std::string_view name) noexcept {
    for (Preset p : all_presets())
        if (preset_name(p) == name) return p;
    return std::nullopt;
}

std::string preset_names() {
    std::string out;
    for (Preset p : all_presets()) {
        if (!out.empty()) out += ", ";
        out += preset_name(p);
    }
    return out;
}

ProtocolParams ProtocolParams::for_preset(Preset p) {
    ProtocolParams out;
    if (p.modified) {
        out.aodv = AodvParams::mod();
        out.fsr = FsrParams::mod();
        out.olsr = OlsrParams::mod();
    }
    return out;
}

std::vector<std::string> check(const ProtocolParams& params, Protocol protocol) {
    switch (protocol) {
        case Protocol::Aodv: return check(params.aodv);
        case Protocol::Fsr: return check(params.fsr);
        case Protocol::Olsr: return check(params.olsr);
    }
    return {};
}

AgentFactory make_agent_factory(Protocol protocol, const ProtocolParams& params) {
    if (auto problems = check(params, protocol); !problems.empty()) throw ConfigError(std::move(problems));
    switch (protocol) {
        case Protocol::Aodv:
            return [p = params.aodv](NodeId id) -> std::unique_ptr<RoutingAgent> {
                return std::make_unique<AodvAgent>(id, p);
            };
        case Protocol::Fsr:
            return [p = params.fsr](NodeId id) -> std::unique_ptr<RoutingAgent> {
                return std::make_unique<FsrAgent>(id, p);
            };
        case Protocol::Olsr:
            return [p = params.olsr](NodeId id) -> std::unique_ptr<RoutingAgent> {
                return std::make_unique<OlsrAgent>(id, p);
            };
    }
    return {};
}

}  // namespace manetsim::routing
