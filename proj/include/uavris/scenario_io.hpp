#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "uavris/scenario.hpp"

namespace uavris {

/// JSON document whose field names mirror the Scenario, Obstacle, Region and
/// RadioConfig members. Positions are objects {x, y, z}.
std::string scenario_to_json(const Scenario& scn, int indent = 2);

/// Inverse of scenario_to_json. Throws std::invalid_argument on missing
/// fields or a document that violates Scenario invariants.
Scenario scenario_from_json(std::string_view text);

void save_scenario(const Scenario& scn, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace uavris
