#pragma once

// Reduced sums along one mode index, beat periods, the stationary
// wavenumber and the detector overlap.

#include <complex>
#include <optional>
#include <vector>

#include "harvest/correlations.hpp"
#include "harvest/model.hpp"
#include "harvest/spectrum.hpp"

namespace harvest {

enum class ReducedKind { RadialAtFixedL, LongitudinalAtFixedM };

struct ReducedSum {
  ReducedKind kind = ReducedKind::RadialAtFixedL;
  int fixed_index = 0;
  int summed_cap = 0;               // last index of the summed axis
  double local = 0.0;               // L_l or L_m
  std::complex<double> nonlocal_raw;  // sum before the modulus
  double nonlocal = 0.0;            // M_l or M_m = |nonlocal_raw|
};

/// M_l = |sum_m (xi/R^2) e^{-omega^2/2} (E(t) + E(-t))|,
/// L_l = sum_m (xi/R^2) e^{-omega^2/2} lambda_j. Lengths in sigma units.
ReducedSum reduced_radial(int l, const CavityGeometry& geom, const DetectorPair& det,
                          const TruncationPolicy& policy);

/// L_m = sum_l e^{-kappa^2/2}/(L kappa) e^{-omega^2/2} lambda_j q_l, M_m the
/// same with (E(t) + E(-t)) p_l inside the modulus.
ReducedSum reduced_longitudinal(int m, const CavityGeometry& geom, const DetectorPair& det,
                                ParityFilter filter, const TruncationPolicy& policy);

/// Delta_l / T = 2 pi / ((kappa_(2,l) - kappa_(1,l)) tau)
double beat_period_radial(int l, const CavityGeometry& geom);

/// Delta_m / T = 2 pi / ((kappa_(m,1) - kappa_(m,0)) tau)
double beat_period_longitudinal(int m, const CavityGeometry& geom);

/// Radial beat period with exact zeros next to the chi_m ~ m pi estimate.
struct BeatComparison {
  double exact = 0.0;
  double approx = 0.0;
  double relative_difference = 0.0;
};
BeatComparison beat_period_radial_vs_mpi(int l, const CavityGeometry& geom);

/// kappa_m^stat = 2 (D/sigma) / ((t_BA/T) tau) * kappa_(m,0). Throws DomainError at t_BA = 0.
double stationary_wavenumber(int m, const CavityGeometry& geom, const DetectorPair& det);

/// exp(-(D/sigma)^2 / 4)
double overlap_magnitude(double distance_ratio);

enum class CapAxis { Radial, Longitudinal };

struct ConvergenceRung {
  int cap = 0;
  CorrelationResult result;
  double relative_change = 0.0;  // vs previous rung; NaN on the first
  bool flagged = false;
};

struct ConvergenceStudy {
  CapAxis axis = CapAxis::Longitudinal;
  std::vector<ConvergenceRung> rungs;
  std::optional<int> flagged_cap;
};

/// 1, 2, 5, 10, 20, 50, ... up to hard_cap.
std::vector<int> cap_ladder(int hard_cap);

/// Walks the ladder on one axis (the other stays adaptive) and flags the
/// first rung whose estimator moved by less than `threshold` relative to
/// local + |nonlocal|. One rung past the flag is kept as a check.
ConvergenceStudy converge(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                          const TruncationPolicy& policy, CapAxis axis, double threshold = 1e-6);

}  // namespace harvest
