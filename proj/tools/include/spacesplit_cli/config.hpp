#pragma once

#include "spacesplit/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spacesplit::cli {

/// Everything a subcommand needs. Parameter indices are 1-based here.
struct RunConfig {
  std::string command;
  std::string map = "baker";
  std::vector<double> s;
  std::optional<int> param;                 ///< s1 ... s_P
  std::optional<std::vector<double>> direction;  ///< weights, overrides param
  std::string observable = "cos4x2";
  long runup = 100;
  long N = 500000;
  int K = 11;
  std::uint64_t seed = 0;
  bool diagnostics = false;
  std::string out;
  std::string frames;      ///< optional frame dump CSV
  std::string trajectory;  ///< optional trajectory CSV
  double oracle_delta = 0.05;
  long oracle_orbits = 200;
  long oracle_orbit_length = 100000;
  int workers = 1;
  std::vector<double> grid{0.0};
  int bins = 50;
  long ensemble = 10000;
};

/// Fill fields present in `j` (a bare config or an artifact with a "config"
/// member). Unknown keys and mistyped values raise ConfigError.
void merge_json(RunConfig& config, const nlohmann::json& j);

/// Range and name checks for `config.command`. Raises ConfigError.
void validate(const RunConfig& config);

/// Resolved config as written into artifacts (key order fixed).
nlohmann::ordered_json to_json(const RunConfig& config);

/// Zero-based weight vector from `param` or `direction`.
Vector direction_weights(const RunConfig& config, int param_dim);

}  // namespace spacesplit::cli
