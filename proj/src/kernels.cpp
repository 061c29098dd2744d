#include "harvest/kernels.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <omp.h>

#include "harvest/specfun.hpp"

namespace harvest {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

ModeSums row_sums(const ModeGrid& grid, int m, double omega_gap, double delay) {
  const double tau = grid.geom.tau;
  const double km2 = grid.kappa_m_sq[m - 1];
  const double rw = grid.radial_weight[m - 1];
  ModeSums row;
  const int max_l = grid.max_l();
  for (int l = 0; l <= max_l; ++l) {
    const double kappa = std::sqrt(km2 + grid.kappa_l_sq[l]);
    const double xi = rw * grid.long_weight[l] / kappa;
    const double w = kappa * tau;
    const double s = w + omega_gap;
    const int parity = l & 1;
    row.local[parity] += xi * std::exp(-0.5 * s * s) * grid.q[l];
    row.nonlocal[parity] += (xi * grid.p[l]) * symmetric_amplitude(w, delay);
  }
  return row;
}

void accumulate(ModeSums& total, const ModeSums& row) {
  for (int k = 0; k < 2; ++k) {
    total.local[k] += row.local[k];
    total.nonlocal[k] += row.nonlocal[k];
  }
}

}  // namespace

cdouble scaled_amplitude(double omega_t, double delay) {
  const double b = omega_t;
  const double a = delay;
  if (a == 0.0) {
    // Real axis: Re w(x) = e^{-x^2} exactly, and the rational form only
    // carries it to absolute accuracy once it is small next to Im w.
    const double im = specfun::faddeeva_upper(cdouble(-b * kInvSqrt2, 0.0)).imag();
    return {std::exp(-0.5 * b * b), im};
  }
  if (a > 0.0) {
    return std::exp(-0.5 * a * a) * specfun::faddeeva_upper(cdouble(-b * kInvSqrt2, a * kInvSqrt2));
  }
  // w(z) = 2 e^{-z^2} - w(-z); the e^{-a^2/2} e^{-z^2} product collapses to
  // e^{-b^2/2 + i a b}.
  const cdouble reflected = specfun::faddeeva_upper(cdouble(b * kInvSqrt2, -a * kInvSqrt2));
  return 2.0 * std::exp(-0.5 * b * b) * cdouble(std::cos(a * b), std::sin(a * b)) -
         std::exp(-0.5 * a * a) * reflected;
}

cdouble symmetric_amplitude(double omega_t, double delay) {
  const double b = omega_t;
  const double a = std::abs(delay);
  const cdouble w = specfun::faddeeva_upper(cdouble(b * kInvSqrt2, a * kInvSqrt2));
  const double g = 2.0 * std::exp(-0.5 * b * b);
  return cdouble(g * std::cos(a * b), -g * std::sin(a * b) - 2.0 * std::exp(-0.5 * a * a) * w.imag());
}

ModeSums mode_sums_serial(const ModeGrid& grid, double omega_gap, double delay) {
  ModeSums total;
  for (int m = 1; m <= grid.max_m(); ++m) accumulate(total, row_sums(grid, m, omega_gap, delay));
  return total;
}

ModeSums mode_sums_parallel(const ModeGrid& grid, double omega_gap, double delay, int workers) {
  const int rows = grid.max_m();
  std::vector<ModeSums> partial(static_cast<std::size_t>(rows));
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (int m = 1; m <= rows; ++m) {
    partial[static_cast<std::size_t>(m - 1)] = row_sums(grid, m, omega_gap, delay);
  }
  ModeSums total;
  for (const ModeSums& row : partial) accumulate(total, row);
  return total;
}

}  // namespace harvest
