#pragma once

// 1D/2D parameter sweeps over the negativity, with presets, per-point error
// records, parity spot checks and a resumable point store.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harvest/correlations.hpp"
#include "harvest/model.hpp"

namespace harvest {

enum class Preset { Microcavity, Waveguide, Disc, Optical };

struct RegimePreset {
  Preset name = Preset::Microcavity;
  double length_ratio = 20.0;
  double radius_ratio = 10.0;
};

RegimePreset regime_preset(Preset p);
std::string_view to_string(Preset p);
Preset parse_preset(std::string_view text);
inline constexpr Preset kAllPresets[] = {Preset::Microcavity, Preset::Waveguide, Preset::Disc,
                                         Preset::Optical};

enum class Parameter { LengthRatio, RadiusRatio, DistanceRatio, OmegaT, DelayRatio };
std::string_view to_string(Parameter p);
Parameter parse_parameter(std::string_view text);

enum class AxisScale { Linear, Log };
std::string_view to_string(AxisScale s);
AxisScale parse_scale(std::string_view text);

struct SweepAxis {
  Parameter parameter = Parameter::DelayRatio;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
  AxisScale scale = AxisScale::Linear;

  std::vector<double> values() const;
};

struct SweepPlan {
  std::vector<SweepAxis> axes;  // 1 or 2 (0: a single point)
  CavityGeometry geom;
  DetectorPair det;
  ParityFilter filter = ParityFilter::All;
  TruncationPolicy policy;
  std::optional<Preset> preset;  // overrides geom length/radius when set

  /// Throws ConfigError: counts < 2, log bounds <= 0, repeated parameters,
  /// a preset together with a length/radius axis, or geometry below the
  /// L/sigma >= 10, R/sigma >= 5 offsets.
  void validate() const;
  /// Geometry and detector pair at grid point `index` (row-major, first axis slowest).
  void point(std::size_t index, CavityGeometry& geom, DetectorPair& det) const;
  std::vector<double> coordinates(std::size_t index) const;
  std::size_t size() const;
};

/// 64-bit FNV-1a of the canonical plan JSON (sorted keys) and code version.
std::uint64_t plan_hash(const SweepPlan& plan);
std::string plan_hash_hex(const SweepPlan& plan);

struct SweepPoint {
  std::vector<double> coords;
  std::optional<CorrelationResult> result;
  std::string error;  // set when result is empty
};

struct SweepOptions {
  int workers = 1;
  double parity_check_fraction = 0.01;
  std::uint64_t parity_seed = 7;
  std::string checkpoint_path;  // empty: no persistence
};

struct SweepResult {
  SweepPlan plan;
  std::vector<SweepPoint> points;
  std::string plan_hash;
  std::string version;
  double wall_seconds = 0.0;
  std::size_t computed = 0;  // points evaluated in this run (rest resumed)
  std::size_t resumed = 0;
  std::size_t parity_checks = 0;
  std::size_t parity_failures = 0;
};

/// Points are independent; results do not depend on options.workers.
SweepResult run_sweep(const SweepPlan& plan, const SweepOptions& options = {});

struct OverlayPoint {
  double distance_ratio;
  double delay_ratio;
};

/// Lightcone boundary tau * t_BA/T = D/sigma on the plan's coordinates. A
/// line when both D and t_BA are swept, one marker point when only one is.
/// Throws DomainError if neither is swept.
std::vector<OverlayPoint> lightcone_overlay(const SweepPlan& plan, int samples = 101);

struct SweepSummary {
  double min_negativity = 0.0;
  double max_negativity = 0.0;
  std::vector<double> argmax;
  std::size_t failed = 0;
};
SweepSummary summarize(const SweepResult& result);

}  // namespace harvest
