#pragma once

#include <string>
#include <vector>

#include "sdcm/sim.hpp"

namespace sdcm {

/// Parses a scenario document into a SimConfig. The format is strict JSON
/// with fixed sections; unknown keys are rejected with their path. See
/// scenarios/ for the bundled documents and README.md for the schema.
SimConfig parse_scenario(const std::string& json_text,
                         const std::string& origin = "<string>");

/// Serializes a SimConfig back to the config document format.
std::string scenario_to_json(const SimConfig& config);

struct BundledScenario {
  std::string name;
  std::string description;
  const char* json;
};

/// Scenario documents compiled into the library: walking_pi6, standing_pi8.
const std::vector<BundledScenario>& bundled_scenarios();

/// Resolves a CLI argument: first an exact bundled name, then a file path.
/// Throws std::runtime_error when neither matches.
SimConfig load_scenario(const std::string& name_or_path);

}  // namespace sdcm
