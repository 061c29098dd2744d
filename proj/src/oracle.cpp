#include "harvest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "harvest/correlations.hpp"
#include "harvest/error.hpp"
#include "harvest/kernels.hpp"
#include "harvest/spectrum.hpp"
#include "harvest/specfun.hpp"

namespace harvest::oracle {
namespace {

using std::numbers::pi;
constexpr double kCut = 8.0;  // time and space cut in units of T and sigma

cdouble phase(double x) { return {std::cos(x), std::sin(x)}; }

double relative(cdouble got, cdouble want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

// Inner integrals get a tighter relative tolerance than the outer one, and an
// absolute floor tied to the size `scale` of a full inner integral so that
// nearly empty inner ranges still terminate.
QuadratureSpec inner_spec(const QuadratureSpec& spec, double scale) {
  QuadratureSpec s = spec;
  s.relative_tolerance = spec.relative_tolerance * 1e-1;
  s.absolute_tolerance = std::max(spec.absolute_tolerance, 1e-2 * spec.relative_tolerance * scale);
  return s;
}

void require_clearance(const CavityGeometry& geom, double z_det) {
  if (z_det < 3.0 || geom.length_ratio - z_det < 3.0) {
    throw DomainError("spatial_overlap_integral: detector needs 3 sigma wall clearance");
  }
}

double detector_a(const CavityGeometry& geom, const DetectorPair& det) {
  return 0.5 * (geom.length_ratio - det.distance_ratio);
}
double detector_b(const CavityGeometry& geom, const DetectorPair& det) {
  return 0.5 * (geom.length_ratio + det.distance_ratio);
}

struct ModeGeometry {
  double kappa_m;
  double kappa_l;
  double kappa;
  double j1;
};

ModeGeometry mode_geometry(ModeIndex j, const CavityGeometry& geom) {
  if (j.m < 1 || j.l < 0) throw DomainError("oracle: requires m >= 1, l >= 0");
  ModeGeometry g;
  g.kappa_m = specfun::bessel_j0_zero(j.m) / geom.radius_ratio;
  g.kappa_l = j.l * pi / geom.length_ratio;
  g.kappa = std::hypot(g.kappa_m, g.kappa_l);
  g.j1 = specfun::bessel_j1(specfun::bessel_j0_zero(j.m));
  return g;
}

}  // namespace

cdouble local_time_integral(double omega_t, double omega_gap, const QuadratureSpec& spec,
                            double t_a) {
  const double nu = omega_gap + omega_t;
  auto f = [&](double t) { return std::exp(-(t_a - t) * (t_a - t)) * phase(t * nu); };
  return integrate(f, t_a - kCut, t_a + kCut, spec).value;
}

cdouble local_time_closed(double omega_t, double omega_gap, double t_a) {
  const double nu = omega_gap + omega_t;
  return std::sqrt(pi) * phase(t_a * nu) * std::exp(-0.25 * nu * nu);
}

cdouble nonlocal_time_integral(double omega_t, double omega_gap, double delay_ratio,
                               const QuadratureSpec& spec) {
  const double t_a = -0.5 * delay_ratio;
  const double t_b = 0.5 * delay_ratio;
  const QuadratureSpec inner = inner_spec(spec, std::sqrt(pi));
  auto outer = [&](double t1) -> cdouble {
    const double upper = std::min(t1, t_b + kCut);
    const double lower = t_b - kCut;
    if (upper <= lower) return 0.0;
    auto g = [&](double t2) {
      return std::exp(-(t_b - t2) * (t_b - t2)) * phase(t2 * (omega_gap + omega_t));
    };
    const cdouble in = integrate(g, lower, upper, inner).value;
    return std::exp(-(t_a - t1) * (t_a - t1)) * phase(t1 * (omega_gap - omega_t)) * in;
  };
  return integrate(outer, t_a - kCut, t_a + kCut, spec).value;
}

cdouble nonlocal_time_closed(double omega_t, double omega_gap, double delay_ratio) {
  // t_A + t_B = 0 for the symmetric placement, so the Omega phase is 1.
  return 0.5 * pi * std::exp(-0.5 * omega_gap * omega_gap) *
         amplitude_E_scaled(omega_t, delay_ratio);
}

double spatial_overlap_integral(ModeIndex j, const CavityGeometry& geom, double z_det,
                                const QuadratureSpec& spec) {
  geom.validate();
  require_clearance(geom, z_det);
  const ModeGeometry g = mode_geometry(j, geom);
  const QuadratureSpec inner = inner_spec(spec, std::sqrt(pi) * (g.kappa_m + g.kappa_l * kCut));
  // E_z ~ J0(k_m rho) cos(k_l z), E_rho ~ (k_l/k_m) J1(k_m rho) sin(k_l z); the
  // dipole smearing rho-hat/z-hat components pick up z' and rho.
  auto radial = [&](double rho) -> cdouble {
    const double j0 = specfun::bessel_j0(g.kappa_m * rho);
    const double j1 = specfun::bessel_j1(g.kappa_m * rho);
    auto axial = [&](double z) -> cdouble {
      const double arg = g.kappa_l * (z_det + z);
      return z * std::exp(-z * z) *
             (g.kappa_m * z * j0 * std::cos(arg) + g.kappa_l * rho * j1 * std::sin(arg));
    };
    const double in = integrate(axial, -kCut, kCut, inner).value.real();
    return 2.0 * pi * rho * std::exp(-rho * rho) * in;
  };
  return integrate(radial, 0.0, std::min(geom.radius_ratio, kCut), spec).value.real();
}

double spatial_overlap_closed(ModeIndex j, const CavityGeometry& geom, double z_det) {
  const ModeGeometry g = mode_geometry(j, geom);
  return 0.5 * std::pow(pi, 1.5) * g.kappa_m * std::exp(-0.25 * g.kappa * g.kappa) *
         std::cos(g.kappa_l * z_det);
}

ModeTerms mode_terms_quadrature(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det,
                                const QuadratureSpec& spec) {
  const ModeGeometry g = mode_geometry(j, geom);
  const double w = g.kappa * geom.tau;
  const double s_a = spatial_overlap_integral(j, geom, detector_a(geom, det), spec);
  const double s_b = std::cos(det.tilt) * spatial_overlap_integral(j, geom, detector_b(geom, det), spec);
  const double c = 4.0 / (std::pow(pi, 4) * g.kappa * g.j1 * g.j1);
  const double loc = std::norm(local_time_integral(w, det.omega_t, spec));
  const cdouble j_ab = nonlocal_time_integral(w, det.omega_t, det.delay_ratio, spec);
  const cdouble j_ba = nonlocal_time_integral(w, det.omega_t, -det.delay_ratio, spec);
  ModeTerms t;
  t.local = c * s_a * s_a * loc;
  t.nonlocal = c * s_a * s_b * (j_ab + j_ba);
  return t;
}

ModeTerms mode_terms_closed(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det) {
  const ModeData d = mode_data(j, geom, det);
  const double s = d.omega_t + det.omega_t;
  ModeTerms t;
  t.local = d.xi * std::exp(-0.5 * s * s) * d.q_l;
  t.nonlocal = 0.5 * std::cos(det.tilt) * std::exp(-0.5 * det.omega_t * det.omega_t) * d.xi *
               d.p_l * symmetric_amplitude(d.omega_t, det.delay_ratio);
  return t;
}

ModeTerms summed_terms_quadrature(int max_m, int max_l, const CavityGeometry& geom,
                                  const DetectorPair& det, const QuadratureSpec& spec) {
  ModeTerms sum;
  for (int m = 1; m <= max_m; ++m) {
    for (int l = 0; l <= max_l; ++l) {
      const ModeTerms t = mode_terms_quadrature({m, l}, geom, det, spec);
      sum.local += t.local;
      sum.nonlocal += t.nonlocal;
    }
  }
  return sum;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass(); });
}

VerificationReport run_verification(int tuples, unsigned seed) {
  VerificationReport report;
  report.tuples = tuples;
  const QuadratureSpec spec;
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  // Parity identity and trigonometric forms of p_l, q_l.
  {
    double exact = 0.0;
    double trig = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const int l = pick(0, 400);
      const double len = uniform(10.0, 1000.0);
      const double dist = uniform(0.01, 0.99) * len;
      const ParityWeights w = parity_weights(l, dist, len);
      const double sign = l % 2 == 0 ? 1.0 : -1.0;
      exact = std::max(exact, std::abs(w.p - sign * w.q));
      const double gm = 0.5 * pi * l * (1.0 - dist / len);
      const double gp = 0.5 * pi * l * (1.0 + dist / len);
      trig = std::max({trig, std::abs(w.q - std::cos(gm) * std::cos(gm)),
                       std::abs(w.p - std::cos(gm) * std::cos(gp))});
    }
    report.checks.push_back({"parity identity p_l = (-1)^l q_l", exact, 0.0});
    // cos(l pi D/L) and cos(gamma) lose ~ l * eps to argument rounding.
    report.checks.push_back({"p_l, q_l vs cos(gamma-) cos(gamma+)", trig, 1e-12});
  }

  // Time integrals against their closed forms.
  {
    double loc = 0.0;
    double nonloc = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double w = uniform(0.0, 5.0);
      const double big_w = uniform(0.0, 3.0);
      const double t = uniform(-3.0, 3.0);
      loc = std::max(loc, relative(local_time_integral(w, big_w, spec, t),
                                   local_time_closed(w, big_w, t)));
      nonloc = std::max(nonloc, relative(nonlocal_time_integral(w, big_w, t, spec),
                                         nonlocal_time_closed(w, big_w, t)));
    }
    report.checks.push_back({"local time integral vs closed form", loc, 1e-10});
    report.checks.push_back({"time-ordered integral vs closed form", nonloc, 1e-8});
  }

  // Random tuples: per-mode terms and box sums against the correlations module.
  double mode_dev = 0.0;
  double sum_dev = 0.0;
  for (int i = 0; i < tuples; ++i) {
    CavityGeometry geom;
    DetectorPair det;
    const int max_m = pick(1, 3);
    const int max_l = pick(0, 5);
    geom.radius_ratio = uniform(6.0, 12.0);
    geom.length_ratio = uniform(14.0, 30.0);
    det.distance_ratio = uniform(5.0, std::min(15.0, geom.length_ratio - 6.0));
    det.omega_t = uniform(0.0, 3.0);
    det.delay_ratio = uniform(-3.0, 3.0);
    det.tilt = uniform(0.0, 0.45 * pi);
    // Keep omega T <= 5 on every mode of the box.
    const double kmax = std::hypot(specfun::bessel_j0_zero(max_m) / geom.radius_ratio,
                                   max_l * pi / geom.length_ratio);
    geom.tau = uniform(0.5, std::min(3.0, 5.0 / kmax));

    ModeTerms box;
    for (int m = 1; m <= max_m; ++m) {
      for (int l = 0; l <= max_l; ++l) {
        const ModeTerms q = mode_terms_quadrature({m, l}, geom, det, spec);
        const ModeTerms c = mode_terms_closed({m, l}, geom, det);
        mode_dev = std::max({mode_dev, relative(q.local, c.local), relative(q.nonlocal, c.nonlocal)});
        box.local += q.local;
        box.nonlocal += q.nonlocal;
      }
    }
    TruncationPolicy policy;
    policy.max_m = max_m;
    policy.max_l = max_l;
    const CorrelationResult r = negativity(geom, det, ParityFilter::All, policy);
    sum_dev = std::max({sum_dev, relative(box.local, r.local), relative(box.nonlocal, r.nonlocal)});
  }
  report.max_mode_deviation = mode_dev;
  report.checks.push_back({"per-mode terms vs quadrature (max relative)", mode_dev, 1e-8});
  report.checks.push_back({"box sums vs correlations module (max relative)", sum_dev, 1e-8});

  // e^{-k^2} against the e^{-k^2/2} smearing weight actually used, for the
  // lowest micro-cavity mode; reported, not checked.
  const double kappa = specfun::bessel_j0_zero(1) / 10.0;
  report.exponent_ratio = std::exp(-kappa * kappa) / std::exp(-0.5 * kappa * kappa);
  return report;
}

}  // namespace harvest::oracle
