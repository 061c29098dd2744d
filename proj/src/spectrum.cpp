#include "harvest/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "harvest/error.hpp"
#include "harvest/format.hpp"

namespace harvest {
namespace {

using std::numbers::pi;

// Smallest spacing of consecutive J0 zeros (chi_2 - chi_1); later gaps grow
// towards pi.
constexpr double kMinZeroGap = 3.1152;  // chi_2 - chi_1 = 3.11525..., rounded down
const double kSqrtHalfPi = std::sqrt(pi / 2.0);

// int_a^inf u^2 exp(-u^2/2) du
double moment2_tail(double a) {
  return a * std::exp(-0.5 * a * a) + kSqrtHalfPi * std::erfc(a / std::numbers::sqrt2);
}

// int_a^inf exp(-u^2/2) du
double gauss_tail(double a) { return kSqrtHalfPi * std::erfc(a / std::numbers::sqrt2); }

struct AxisBounds {
  double radial_all = 0.0;      // >= sum_m kappa_m^2 e^{-kappa_m^2/2}
  double radial_all_g = 0.0;    // >= sum_m e^{-kappa_m^2/2}
  double long_all = 0.0;        // >= sum_l e^{-kappa_l^2/2}
};

AxisBounds axis_bounds(const CavityGeometry& geom) {
  const double r = geom.radius_ratio;
  const double len = geom.length_ratio;
  return {(r / kMinZeroGap) * kSqrtHalfPi + 2.0 / std::numbers::e,
          (r / kMinZeroGap) * kSqrtHalfPi + 1.0,
          1.0 + (len / pi) * kSqrtHalfPi};
}

// Bounds on sum_{m > max_m} of kappa_m^2 e^{-kappa_m^2/2} (weighted) and of
// e^{-kappa_m^2/2}. Both summands decrease past kappa = sqrt 2 (resp. 0), so
// each term is dominated by the integral over the preceding gap.
double radial_tail_weighted(double r, int max_m, double chi_max) {
  const double a = chi_max / r;
  if (max_m < 1 || a < std::numbers::sqrt2) return INFINITY;
  return (r / kMinZeroGap) * moment2_tail(a);
}

double radial_tail_gauss(double r, int max_m, double chi_max) {
  if (max_m < 1) return INFINITY;
  return (r / kMinZeroGap) * gauss_tail(chi_max / r);
}

double long_tail(double len, int max_l) {
  return (len / pi) * gauss_tail(max_l * pi / len);
}

double chi(int m) { return specfun::bessel_j0_zero(m); }

// xi sigma <= (pi R / 2) kappa_m^2 e^{-kappa_m^2/2} e^{-kappa_l^2/2}, using
// J1(chi_m)^{-2} <= (pi/2) chi_m and 1/kappa <= 1/kappa_m.
double xi_tail(const CavityGeometry& geom, const AxisBounds& all, int max_m, int max_l) {
  const double r = geom.radius_ratio;
  const double gm = radial_tail_weighted(r, max_m, chi(std::max(max_m, 1)));
  const double hl = long_tail(geom.length_ratio, max_l);
  return 0.5 * pi * r * (gm * all.long_all + all.radial_all * hl);
}

int radial_cap_for(const CavityGeometry& geom, const AxisBounds& all, double budget, int hard_cap) {
  const double r = geom.radius_ratio;
  const double scale = 0.5 * pi * r * all.long_all;
  // Exponential search then bisection; the bound is monotone in max_m.
  auto ok = [&](int m) { return scale * radial_tail_weighted(r, m, chi(m)) <= budget; };
  int hi = 1;
  while (!ok(hi)) {
    if (hi >= hard_cap) return -1;
    hi = std::min(2 * hi, hard_cap);
  }
  int lo = hi / 2;  // lo fails (or is 0)
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

int long_cap_for(const CavityGeometry& geom, const AxisBounds& all, double budget, int hard_cap) {
  const double scale = 0.5 * pi * geom.radius_ratio * all.radial_all;
  auto ok = [&](int l) { return scale * long_tail(geom.length_ratio, l) <= budget; };
  if (ok(0)) return 0;
  int hi = 1;
  while (!ok(hi)) {
    if (hi >= hard_cap) return -1;
    hi = std::min(2 * hi, hard_cap);
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Partial sum of xi sigma over a sub-box of the kept box: a cheap lower
// estimate of the full kept sum.
constexpr int kEstimateBox = 256;

double kept_lower_estimate(const CavityGeometry& geom, int max_m, int max_l) {
  const int mm = std::min(max_m, kEstimateBox);
  const int ll = std::min(max_l, kEstimateBox);
  const auto table = specfun::bessel_zero_table(static_cast<std::size_t>(mm));
  double total = 0.0;
  for (int m = 1; m <= mm; ++m) {
    const double km = table->zeros[m - 1] / geom.radius_ratio;
    const double j1 = table->j1_at_zeros[m - 1];
    const double rw = km * km * std::exp(-0.5 * km * km) / (j1 * j1);
    for (int l = 0; l <= ll; ++l) {
      const double kl = l * pi / geom.length_ratio;
      total += rw * std::exp(-0.5 * kl * kl) / std::sqrt(km * km + kl * kl);
    }
  }
  return total;
}

// Initial box: kappa about 3 on each axis.
int initial_radial_cap(const CavityGeometry& geom) {
  return std::max(1, static_cast<int>(std::ceil(3.0 * geom.radius_ratio / pi)));
}
int initial_long_cap(const CavityGeometry& geom) {
  return std::max(0, static_cast<int>(std::ceil(3.0 * geom.length_ratio / pi)));
}

}  // namespace

ParityWeights parity_weights(int l, double distance, double length) {
  if (l < 0) throw DomainError("parity_weights: l must be >= 0");
  if (!(distance > 0.0) || !(distance < length)) {
    throw DomainError("parity_weights: requires 0 < D < L");
  }
  const double c = std::cos(l * pi * distance / length);
  const bool even = l % 2 == 0;
#ifdef HARVEST_INJECT_PARITY_SIGN_FLIP
  // Mutation fixture: verify must catch this.
  const double p_sign = even ? -1.0 : 1.0;
#else
  const double p_sign = 1.0;
#endif
  ParityWeights w;
  w.q = 0.5 * (1.0 + (even ? c : -c));
  w.p = p_sign * 0.5 * (even ? c + 1.0 : c - 1.0);
  return w;
}

ModeData mode_data(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det) {
  if (j.m < 1 || j.l < 0) throw DomainError("mode_data: requires m >= 1 and l >= 0");
  geom.validate();
  det.validate();
  const auto table = specfun::bessel_zero_table(static_cast<std::size_t>(j.m));
  const double chi_m = table->zeros[j.m - 1];
  const double j1 = table->j1_at_zeros[j.m - 1];
  ModeData d;
  d.index = j;
  d.kappa_m = chi_m / geom.radius_ratio;
  d.kappa_l = j.l * pi / geom.length_ratio;
  d.kappa = std::sqrt(d.kappa_m * d.kappa_m + d.kappa_l * d.kappa_l);
  d.omega_t = d.kappa * geom.tau;
  d.xi = d.kappa_m * d.kappa_m / (j1 * j1 * d.kappa) *
         std::exp(-0.5 * d.kappa_m * d.kappa_m) * std::exp(-0.5 * d.kappa_l * d.kappa_l);
  const double ratio = det.distance_ratio / geom.length_ratio;
  d.gamma_minus = 0.5 * pi * j.l * (1.0 - ratio);
  d.gamma_plus = 0.5 * pi * j.l * (1.0 + ratio);
  const ParityWeights w = parity_weights(j.l, det.distance_ratio, geom.length_ratio);
  d.q_l = w.q;
  d.p_l = w.p;
  d.lambda = std::exp(-d.omega_t * det.omega_t);
  return d;
}

double ModeGrid::kappa(int m, int l) const {
  return std::sqrt(kappa_m_sq[m - 1] + kappa_l_sq[l]);
}

double ModeGrid::xi(int m, int l) const {
  return radial_weight[m - 1] * long_weight[l] / kappa(m, l);
}

ModeData ModeGrid::mode(int m, int l, double omega_t) const {
  ModeData d;
  d.index = {m, l};
  d.kappa_m = kappa_m[m - 1];
  d.kappa_l = l * pi / geom.length_ratio;
  d.kappa = kappa(m, l);
  d.omega_t = d.kappa * geom.tau;
  d.xi = xi(m, l);
  const double ratio = distance_ratio / geom.length_ratio;
  d.gamma_minus = 0.5 * pi * l * (1.0 - ratio);
  d.gamma_plus = 0.5 * pi * l * (1.0 + ratio);
  d.q_l = q[l];
  d.p_l = p[l];
  d.lambda = std::exp(-d.omega_t * omega_t);
  return d;
}

TailBounds tail_bounds(const CavityGeometry& geom, int max_m, int max_l) {
  const AxisBounds all = axis_bounds(geom);
  TailBounds out;
  out.xi_outside = xi_tail(geom, all, max_m, max_l);
  const double r = geom.radius_ratio;
  const double gm = radial_tail_gauss(r, max_m, chi(std::max(max_m, 1)));
  const double hl = long_tail(geom.length_ratio, max_l);
  out.gaussian_outside = gm * all.long_all + all.radial_all_g * hl;
  return out;
}

ModeGrid enumerate_modes(const CavityGeometry& geom, const DetectorPair& det,
                         const TruncationPolicy& policy) {
  geom.validate();
  policy.validate();
  if (!(det.distance_ratio > 0.0) || !(det.distance_ratio < geom.length_ratio)) {
    throw ConfigError("enumerate_modes: requires 0 < D < L");
  }
  const AxisBounds all = axis_bounds(geom);

  int max_m = policy.max_m.value_or(initial_radial_cap(geom));
  int max_l = policy.max_l.value_or(initial_long_cap(geom));
  if (!policy.max_m || !policy.max_l) {
    const double kept = kept_lower_estimate(geom, max_m, max_l);
    const double budget = policy.tail_tolerance * kept;
    const bool both_free = !policy.max_m && !policy.max_l;
    const double share = both_free ? 0.5 * budget : budget;
    if (!policy.max_m) {
      const int cap = radial_cap_for(geom, all, share, policy.hard_cap);
      if (cap < 0) {
        throw TruncationError("radial tail tolerance " + std::to_string(policy.tail_tolerance) +
                              " not reachable within hard cap " + std::to_string(policy.hard_cap));
      }
      // Never below the estimate box, so the lower estimate stays valid.
      max_m = std::max(max_m, cap);
    }
    if (!policy.max_l) {
      const int cap = long_cap_for(geom, all, share, policy.hard_cap);
      if (cap < 0) {
        throw TruncationError("longitudinal tail tolerance " +
                              std::to_string(policy.tail_tolerance) +
                              " not reachable within hard cap " + std::to_string(policy.hard_cap));
      }
      max_l = std::max(max_l, cap);
    }
    if (max_m > policy.hard_cap || max_l > policy.hard_cap) {
      throw TruncationError("mode cap exceeds hard cap " + std::to_string(policy.hard_cap));
    }
  }

  ModeGrid grid;
  grid.geom = geom;
  grid.distance_ratio = det.distance_ratio;
  const auto table = specfun::bessel_zero_table(static_cast<std::size_t>(max_m));
  grid.kappa_m.resize(max_m);
  grid.kappa_m_sq.resize(max_m);
  grid.radial_weight.resize(max_m);
  for (int m = 1; m <= max_m; ++m) {
    const double km = table->zeros[m - 1] / geom.radius_ratio;
    const double j1 = table->j1_at_zeros[m - 1];
    grid.kappa_m[m - 1] = km;
    grid.kappa_m_sq[m - 1] = km * km;
    grid.radial_weight[m - 1] = km * km * std::exp(-0.5 * km * km) / (j1 * j1);
  }
  grid.kappa_l_sq.resize(max_l + 1);
  grid.long_weight.resize(max_l + 1);
  grid.q.resize(max_l + 1);
  grid.p.resize(max_l + 1);
  for (int l = 0; l <= max_l; ++l) {
    const double kl = l * pi / geom.length_ratio;
    grid.kappa_l_sq[l] = kl * kl;
    grid.long_weight[l] = std::exp(-0.5 * kl * kl);
    const ParityWeights w = parity_weights(l, det.distance_ratio, geom.length_ratio);
    grid.q[l] = w.q;
    grid.p[l] = w.p;
  }

  const TailBounds tb = tail_bounds(geom, max_m, max_l);
  const double kept = kept_lower_estimate(geom, max_m, max_l);
  grid.report.max_m = max_m;
  grid.report.max_l = max_l;
  grid.report.gaussian_tail = tb.gaussian_outside;
  // Per mode: local <= xi, |nonlocal| <= (1/2) |S| xi with |S| <= 4.
  grid.report.tail_bound = 3.0 * tb.xi_outside;
  grid.report.relative_tail = tb.xi_outside / kept;
  grid.report.mode_count = static_cast<long long>(max_m) * (max_l + 1);
  return grid;
}

double prefactor_ratio(const CavityGeometry& geom) {
  return 1.0 / (geom.length_ratio * geom.radius_ratio * geom.radius_ratio);
}

double si_prefactor(const SiInputs& in) {
  constexpr double c = 299792458.0;
  constexpr double eps0 = 8.8541878128e-12;
  constexpr double hbar = 1.054571817e-34;
  if (!(in.switching_time > 0.0) || !(in.width > 0.0) || !(in.length > 0.0) || !(in.radius > 0.0)) {
    throw ConfigError("si_prefactor: times and lengths must be > 0");
  }
  return c * in.charge * in.charge * in.switching_time * in.switching_time * in.width * in.width /
         (2.0 * eps0 * hbar * in.length * in.radius * in.radius);
}

void write_mode_csv(std::ostream& out, const ModeGrid& grid, const DetectorPair& det) {
  out << "m,l,kappa,omegaT,xi,gamma_minus,gamma_plus,q_l,p_l,lambda\n";
  for (int m = 1; m <= grid.max_m(); ++m) {
    for (int l = 0; l <= grid.max_l(); ++l) {
      const ModeData d = grid.mode(m, l, det.omega_t);
      out << m << ',' << l << ',' << fmt12(d.kappa) << ',' << fmt12(d.omega_t) << ','
          << fmt12(d.xi) << ',' << fmt12(d.gamma_minus) << ',' << fmt12(d.gamma_plus) << ','
          << fmt12(d.q_l) << ',' << fmt12(d.p_l) << ',' << fmt12(d.lambda) << '\n';
    }
  }
}

}  // namespace harvest
