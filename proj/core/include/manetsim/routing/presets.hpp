#pragma once

#include "manetsim/routing/agent.hpp"
#include "manetsim/routing/aodv.hpp"
#include "manetsim/routing/fsr.hpp"
#include "manetsim/routing/olsr.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manetsim::routing {

enum class Protocol { Aodv, Fsr, Olsr };

std::string_view to_string(Protocol p) noexcept;

struct Preset {
    Protocol protocol = Protocol::Aodv;
    bool modified = false;

    friend bool operator==(const Preset&, const Preset&) = default;
    friend auto operator<=>(const Preset&, const Preset&) = default;
};

/// "aodv-def", "olsr-mod", ...
std::string preset_name(Preset p);
std::optional<Preset> parse_preset(std::string_view name) noexcept;
/// All six presets in a fixed order.
std::vector<Preset> all_presets();
/// Comma-separated list of valid names, for error messages.
std::string preset_names();

/// Parameters of all three protocols; only the one matching the preset is used.
struct ProtocolParams {
    AodvParams aodv;
    FsrParams fsr;
    OlsrParams olsr;

    static ProtocolParams for_preset(Preset p);

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

std::vector<std::string> check(const ProtocolParams& params, Protocol protocol);

AgentFactory make_agent_factory(Protocol protocol, const ProtocolParams& params);

}  // namespace manetsim::routing
