#pragma once

// Run configuration: JSON file plus one-to-one flag overrides.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harvest/model.hpp"
#include "harvest/sweep.hpp"

namespace harvest {

struct RunConfig {
  std::optional<Preset> preset;
  CavityGeometry geom;
  DetectorPair det;
  ParityFilter filter = ParityFilter::All;
  TruncationPolicy policy;
  std::string output;  // file or prefix, command dependent; empty = stdout
  int workers = 1;

  /// Applies the preset to geom, then validates everything.
  void resolve();
  nlohmann::json to_json() const;
};

/// Schema:
///   { "preset": "microcavity" | null,
///     "geometry": {"length_ratio", "radius_ratio", "tau"},
///     "detectors": {"omega_t", "distance_ratio", "delay_ratio", "tilt", "psi", "phi"},
///     "parity": "all" | "even" | "odd",
///     "truncation": {"max_m", "max_l", "tail_tolerance", "hard_cap"},
///     "output": "path", "workers": 4 }
/// Every key is optional; unknown keys are a ConfigError.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

/// Worker count from HARVEST_WORKERS, or nullopt when unset. Throws
/// ConfigError on a malformed value.
std::optional<int> workers_from_env();

}  // namespace harvest
