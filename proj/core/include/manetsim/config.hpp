#pragma once

#include "manetsim/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace manetsim::config {

/// Parses `key = value` lines grouped under `[section]` headers. Keys before
/// the first header belong to [scenario]. `#` and `;` start comments.
/// Missing keys keep the defaults of the configured net type and preset.
/// Throws ConfigError listing every problem found.
Scenario parse(std::string_view text);

/// Every problem parse() would report; empty for a valid config.
std::vector<std::string> validate(std::string_view text);

/// Writes every setting; parse(serialize(s)) == s.
std::string serialize(const Scenario& s);

/// All accepted keys as `section.key`.
std::vector<std::string> known_keys();

/// Known key with the smallest edit distance to `key`.
std::string nearest_key(std::string_view key);

std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace manetsim::config
