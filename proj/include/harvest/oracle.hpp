#pragma once

// Brute-force quadrature of the time and space integrals behind the closed
// forms. Slow on purpose; used by tests and `verify` only.

#include <complex>
#include <string>
#include <vector>

#include "harvest/model.hpp"
#include "harvest/quadrature.hpp"

namespace harvest::oracle {

using cdouble = std::complex<double>;

/// int dt e^{-(t_A - t)^2} e^{i t (Omega + omega)} over t_A +- 8 (T = 1).
cdouble local_time_integral(double omega_t, double omega_gap, const QuadratureSpec& spec,
                            double t_a = 0.0);
/// sqrt(pi) e^{i t_A (Omega + omega)} e^{-(Omega + omega)^2 / 4}
cdouble local_time_closed(double omega_t, double omega_gap, double t_a = 0.0);

/// Time ordered double integral over t2 < t1 of
///   e^{-(t_A - t1)^2} e^{i t1 (Omega - omega)} e^{-(t_B - t2)^2} e^{i t2 (Omega + omega)}
/// with t_A = -t_BA/2, t_B = +t_BA/2, each time axis cut at +- 8 about its centre.
cdouble nonlocal_time_integral(double omega_t, double omega_gap, double delay_ratio,
                               const QuadratureSpec& spec);
/// (pi/2) e^{-(omega^2 + Omega^2)/2} e^{i Omega (t_A + t_B)} E(omega, t_B - t_A)
cdouble nonlocal_time_closed(double omega_t, double omega_gap, double delay_ratio);

/// Overlap of the detector smearing with the TM mode (m, l), detector centred
/// at z_det (sigma units) on the axis: radial x longitudinal quadrature with
/// rho in [0, min(R, 8)] and z' in [-8, 8].
double spatial_overlap_integral(ModeIndex j, const CavityGeometry& geom, double z_det,
                                const QuadratureSpec& spec);
/// (pi^{3/2} / 2) kappa_m e^{-kappa^2/4} cos(kappa_l z_det)
double spatial_overlap_closed(ModeIndex j, const CavityGeometry& geom, double z_det);

/// Per-mode local and (pre-modulus) non-local terms assembled from the
/// quadratures, in the same units as the correlations module.
struct ModeTerms {
  double local = 0.0;
  cdouble nonlocal;
};
ModeTerms mode_terms_quadrature(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det,
                                const QuadratureSpec& spec);
ModeTerms mode_terms_closed(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det);

/// Sum of the quadrature per-mode terms over the box [1, max_m] x [0, max_l].
ModeTerms summed_terms_quadrature(int max_m, int max_l, const CavityGeometry& geom,
                                  const DetectorPair& det, const QuadratureSpec& spec);

struct CheckLine {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return deviation <= tolerance; }
};

struct VerificationReport {
  std::vector<CheckLine> checks;
  double max_mode_deviation = 0.0;   // worst per-mode relative deviation
  double exponent_ratio = 0.0;       // e^{-k^2 sigma^2} vs e^{-(k sigma)^2/2}, sample mode
  int tuples = 0;
  bool pass() const;
};

/// Runs the oracle suite on `tuples` random parameter sets (seeded) plus the
/// parity identity and end-to-end sums.
VerificationReport run_verification(int tuples = 24, unsigned seed = 20240611);

}  // namespace harvest::oracle
