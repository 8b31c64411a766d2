#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "parafoil/world.hpp"

namespace parafoil {

/// Parses a scenario JSON document. Unknown keys, missing required keys and
/// wrongly typed values raise ConfigError with the offending JSON path.
/// The result is validated before it is returned.
Scenario parse_scenario(std::string_view json_text);

Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario in the same schema `parse_scenario` accepts.
std::string scenario_to_json(const Scenario& scenario, const std::string& description = {});

}  // namespace parafoil
