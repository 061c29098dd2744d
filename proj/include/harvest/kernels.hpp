#pragma once

// Mode-sum kernels. Both variants add each radial row in ascending l (even
// and odd l into separate accumulators) and then add the rows in ascending m,
// so their results are bit-identical for any thread count.

#include <complex>

#include "harvest/spectrum.hpp"

namespace harvest {

using cdouble = std::complex<double>;

/// e^{-b^2/2} E(b, a) with b = omega T, a = t_BA / T, as
/// e^{-a^2/2} w(i (a + i b)/sqrt 2); reflected for a < 0 so nothing overflows.
cdouble scaled_amplitude(double omega_t, double delay);

/// scaled_amplitude(b, a) + scaled_amplitude(b, -a) with one Faddeeva call.
cdouble symmetric_amplitude(double omega_t, double delay);

struct ModeSums {
  // index 0: even l, 1: odd l
  double local[2] = {0.0, 0.0};     // sum xi e^{-(omega+Omega)^2/2} q_l
  cdouble nonlocal[2] = {};         // sum xi S(omega, t) p_l, no prefactor
};

ModeSums mode_sums_serial(const ModeGrid& grid, double omega_gap, double delay);

/// OpenMP over radial rows; workers <= 0 means the OpenMP default.
ModeSums mode_sums_parallel(const ModeGrid& grid, double omega_gap, double delay, int workers);

}  // namespace harvest
