#pragma once

// JSON and CSV forms of results and plans. Output numbers carry 12
// significant digits; the checkpoint store keeps full precision.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "harvest/correlations.hpp"
#include "harvest/diagnostics.hpp"
#include "harvest/sweep.hpp"

namespace harvest {

using json = nlohmann::json;

inline constexpr int kSweepSchemaVersion = 1;

json to_json(const TruncationReport& r, bool round = true);
TruncationReport truncation_from_json(const json& j);

json to_json(const CorrelationResult& r, bool round = true);
CorrelationResult correlation_from_json(const json& j);

json to_json(const CavityGeometry& g);
json to_json(const DetectorPair& d);
json to_json(const TruncationPolicy& p);
json to_json(const SweepAxis& a);
json to_json(const SweepPlan& plan);

/// Reads a plan. Keys: axes [{parameter, min, max, count, scale}], preset,
/// geometry {length_ratio, radius_ratio, tau}, fixed {omega_t,
/// distance_ratio, delay_ratio, tilt, psi, phi}, parity, truncation
/// {max_m, max_l, tail_tolerance, hard_cap}. Unknown keys and fixed values
/// for swept parameters are rejected with ConfigError.
SweepPlan plan_from_json(const json& j);

json to_json(const ReducedSum& r);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
json sweep_to_json(const SweepResult& result);
void write_overlay_csv(std::ostream& out, const std::vector<OverlayPoint>& overlay);

}  // namespace harvest
