#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace manetsim {

using NodeId = std::int32_t;
inline constexpr NodeId kBroadcast = -1;
inline constexpr NodeId kNoNode = -2;

using PacketId = std::uint64_t;

/// Raised for invalid scenarios, configs and parameter sets. Carries every
/// problem found, not just the first one.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    explicit ConfigError(const std::string& problem) : ConfigError(std::vector<std::string>{problem}) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& problems) {
        std::string out;
        for (const auto& p : problems) {
            if (!out.empty()) out += "; ";
            out += p;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace manetsim
