#pragma once

// Parameter types shared by every module. All lengths are in units of the
// detector width sigma and all times in units of the switching time T.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace harvest {

struct CavityGeometry {
  double length_ratio = 20.0;  // L / sigma
  double radius_ratio = 10.0;  // R / sigma
  double tau = 3.0;            // c T / sigma

  /// Throws ConfigError unless all three are finite and positive.
  void validate() const;
};

struct DetectorPair {
  double omega_t = 1.0;         // Omega T, detector gap
  double distance_ratio = 5.0;  // D / sigma
  double delay_ratio = 0.0;     // t_BA / T, any sign
  double tilt = 0.0;            // Euler polar angle theta in [0, pi]
  // Accepted for completeness; the on-axis closed form does not depend on them.
  double psi = 0.0;
  double phi = 0.0;

  void validate() const;
  /// Human-readable warnings (overlap, ignored Euler angles).
  std::vector<std::string> warnings() const;
};

/// Checks the pair fits inside the cavity (0 < D < L). Returns warnings for
/// small wall clearance.
std::vector<std::string> validate_placement(const CavityGeometry& geom, const DetectorPair& det);

/// TM (azimuthal index 0) cavity mode: radial m >= 1, longitudinal l >= 0.
struct ModeIndex {
  int m = 1;
  int l = 0;
};

enum class ParityFilter { All, EvenL, OddL };

std::string_view to_string(ParityFilter filter);
ParityFilter parse_parity(std::string_view text);

/// True if the filter keeps longitudinal index l.
constexpr bool keeps(ParityFilter filter, int l) {
  switch (filter) {
    case ParityFilter::EvenL: return l % 2 == 0;
    case ParityFilter::OddL: return l % 2 == 1;
    case ParityFilter::All: return true;
  }
  return true;
}

enum class Lightcone { Spacelike, Timelike };

std::string_view to_string(Lightcone cone);

/// Hard cut c |t_BA| < D  <=>  Spacelike.
Lightcone classify_lightcone(const CavityGeometry& geom, const DetectorPair& det);

struct TruncationPolicy {
  std::optional<int> max_m;      // explicit radial cap
  std::optional<int> max_l;      // explicit longitudinal cap
  double tail_tolerance = 1e-8;  // relative, used for any axis without a cap
  int hard_cap = 10000;          // per index

  void validate() const;
};

struct TruncationReport {
  int max_m = 0;
  int max_l = 0;
  double gaussian_tail = 0.0;  // upper bound on sum of exp(-kappa^2/2) outside the caps
  double tail_bound = 0.0;     // upper bound on |delta local| + |delta nonlocal| from the same modes
  double relative_tail = 0.0;  // tail bound on sum xi*sigma relative to the in-box sum
  long long mode_count = 0;
};

}  // namespace harvest
