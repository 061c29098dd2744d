#include "harvest/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "harvest/error.hpp"
#include "harvest/kernels.hpp"

namespace harvest {
namespace {

using std::numbers::pi;

double kappa_ml(int m, int l, const CavityGeometry& geom) {
  const double km = specfun::bessel_j0_zero(m) / geom.radius_ratio;
  const double kl = l * pi / geom.length_ratio;
  return std::sqrt(km * km + kl * kl);
}

// e^{-omega^2/2} lambda = e^{-omega^2/2 - omega Omega}
double local_kernel(double w, double omega_gap) { return std::exp(-0.5 * w * w - w * omega_gap); }

}  // namespace

ReducedSum reduced_radial(int l, const CavityGeometry& geom, const DetectorPair& det,
                          const TruncationPolicy& policy) {
  if (l < 0) throw DomainError("reduced_radial: l must be >= 0");
  validate_placement(geom, det);
  const ModeGrid grid = enumerate_modes(geom, det, policy);
  if (l > grid.max_l()) {
    throw DomainError("reduced_radial: l = " + std::to_string(l) + " beyond longitudinal cap " +
                      std::to_string(grid.max_l()));
  }
  const double r2 = geom.radius_ratio * geom.radius_ratio;
  ReducedSum out;
  out.kind = ReducedKind::RadialAtFixedL;
  out.fixed_index = l;
  out.summed_cap = grid.max_m();
  for (int m = 1; m <= grid.max_m(); ++m) {
    const double w = grid.kappa(m, l) * geom.tau;
    const double weight = grid.xi(m, l) / r2;
    out.local += weight * local_kernel(w, det.omega_t);
    out.nonlocal_raw += weight * symmetric_amplitude(w, det.delay_ratio);
  }
  out.nonlocal = std::abs(out.nonlocal_raw);
  return out;
}

ReducedSum reduced_longitudinal(int m, const CavityGeometry& geom, const DetectorPair& det,
                                ParityFilter filter, const TruncationPolicy& policy) {
  if (m < 1) throw DomainError("reduced_longitudinal: m must be >= 1");
  validate_placement(geom, det);
  const ModeGrid grid = enumerate_modes(geom, det, policy);
  if (m > grid.max_m()) {
    throw DomainError("reduced_longitudinal: m = " + std::to_string(m) + " beyond radial cap " +
                      std::to_string(grid.max_m()));
  }
  const double km2 = grid.kappa_m_sq[m - 1];
  const double gm = std::exp(-0.5 * km2);
  ReducedSum out;
  out.kind = ReducedKind::LongitudinalAtFixedM;
  out.fixed_index = m;
  out.summed_cap = grid.max_l();
  for (int l = 0; l <= grid.max_l(); ++l) {
    if (!keeps(filter, l)) continue;
    const double kappa = grid.kappa(m, l);
    const double w = kappa * geom.tau;
    const double weight = gm * grid.long_weight[l] / (geom.length_ratio * kappa);
    out.local += weight * local_kernel(w, det.omega_t) * grid.q[l];
    out.nonlocal_raw += (weight * grid.p[l]) * symmetric_amplitude(w, det.delay_ratio);
  }
  out.nonlocal = std::abs(out.nonlocal_raw);
  return out;
}

double beat_period_radial(int l, const CavityGeometry& geom) {
  geom.validate();
  if (l < 0) throw DomainError("beat_period_radial: l must be >= 0");
  return 2.0 * pi / ((kappa_ml(2, l, geom) - kappa_ml(1, l, geom)) * geom.tau);
}

double beat_period_longitudinal(int m, const CavityGeometry& geom) {
  geom.validate();
  if (m < 1) throw DomainError("beat_period_longitudinal: m must be >= 1");
  return 2.0 * pi / ((kappa_ml(m, 1, geom) - kappa_ml(m, 0, geom)) * geom.tau);
}

BeatComparison beat_period_radial_vs_mpi(int l, const CavityGeometry& geom) {
  BeatComparison c;
  c.exact = beat_period_radial(l, geom);
  const double kl = l * pi / geom.length_ratio;
  const double k1 = std::hypot(pi / geom.radius_ratio, kl);
  const double k2 = std::hypot(2.0 * pi / geom.radius_ratio, kl);
  c.approx = 2.0 * pi / ((k2 - k1) * geom.tau);
  c.relative_difference = (c.approx - c.exact) / c.exact;
  return c;
}

double stationary_wavenumber(int m, const CavityGeometry& geom, const DetectorPair& det) {
  geom.validate();
  if (m < 1) throw DomainError("stationary_wavenumber: m must be >= 1");
  if (det.delay_ratio == 0.0) {
    throw DomainError("stationary_wavenumber: undefined at t_BA = 0");
  }
  const double k_m0 = specfun::bessel_j0_zero(m) / geom.radius_ratio;
  return 2.0 * det.distance_ratio / (det.delay_ratio * geom.tau) * k_m0;
}

double overlap_magnitude(double distance_ratio) {
  if (!(distance_ratio > 0.0)) throw DomainError("overlap_magnitude: distance must be > 0");
  return std::exp(-0.25 * distance_ratio * distance_ratio);
}

std::vector<int> cap_ladder(int hard_cap) {
  std::vector<int> caps;
  for (long long decade = 1; decade <= hard_cap; decade *= 10) {
    for (int f : {1, 2, 5}) {
      if (decade * f <= hard_cap) caps.push_back(static_cast<int>(decade * f));
    }
  }
  return caps;
}

ConvergenceStudy converge(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                          const TruncationPolicy& policy, CapAxis axis, double threshold) {
  validate_placement(geom, det);
  ConvergenceStudy study;
  study.axis = axis;
  for (int cap : cap_ladder(policy.hard_cap)) {
    TruncationPolicy p = policy;
    if (axis == CapAxis::Radial) {
      p.max_m = cap;
    } else {
      p.max_l = cap;
    }
    ConvergenceRung rung;
    rung.cap = cap;
    rung.result = negativity(geom, det, filter, p);
    rung.relative_change = std::nan("");
    if (!study.rungs.empty()) {
      const CorrelationResult& prev = study.rungs.back().result;
      const double scale = rung.result.local + std::abs(rung.result.nonlocal);
      rung.relative_change = std::abs(rung.result.estimator - prev.estimator) / scale;
    }
    const bool had_flag = study.flagged_cap.has_value();
    if (!had_flag && rung.relative_change < threshold) {
      rung.flagged = true;
      study.flagged_cap = cap;
    }
    study.rungs.push_back(rung);
    if (had_flag) break;
  }
  return study;
}

}  // namespace harvest
