#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "robandit/evalharness.hpp"

namespace robandit {

/// Everything one invocation needs. Defaults reproduce the published setup.
struct RunConfig {
  HarnessConfig harness;
  OutlierConfig outliers;
  std::vector<double> psis{0.0, 0.01, 0.03, 0.05, 0.07, 0.09};
  std::vector<double> nus{0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
};

/// Flat JSON keys understood by config_from_json. Anything else is rejected.
const std::vector<std::string>& config_keys();

/// Missing keys keep their defaults; wrong types, unknown keys and invalid
/// values raise Error(ConfigParse) naming the field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Applies one `key=value` override to a raw config object. The value is
/// parsed as JSON (so `beta=[...]` works).
void apply_override(nlohmann::json& raw, std::string_view assignment);

/// Reads a JSON config file; an empty path yields the defaults.
nlohmann::json read_config_file(const std::string& path);
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace robandit
