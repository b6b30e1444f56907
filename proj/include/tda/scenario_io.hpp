#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tda/scenario.hpp"

namespace tda {

/// Parses and validates a scenario document. Unknown keys are rejected.
Scenario scenario_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Canonical text form: two-space indented JSON with a trailing newline.
std::string dump_scenario(const Scenario& s);

}  // namespace tda
