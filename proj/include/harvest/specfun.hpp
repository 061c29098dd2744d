#pragma once

// Special functions needed by the cavity mode sums: J0/J1, the positive
// zeros of J0 and the Faddeeva function w(z) = exp(-z^2) erfc(-i z).

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace harvest::specfun {

using cdouble = std::complex<double>;

/// Bessel function of the first kind, order 0 or 1.
/// Throws DomainError for other orders or non-finite x.
double bessel_j(int order, double x);

double bessel_j0(double x);
double bessel_j1(double x);

/// Positive zeros chi_m of J0 with J1(chi_m) cached alongside.
struct BesselZeroTable {
  std::vector<double> zeros;        // zeros[m-1] = chi_m
  std::vector<double> j1_at_zeros;  // J1(chi_m)

  std::size_t size() const { return zeros.size(); }
};

/// Snapshot of the shared zero table holding at least `count` zeros. The table
/// grows under a lock; returned snapshots are immutable and safe to read from
/// any number of threads.
std::shared_ptr<const BesselZeroTable> bessel_zero_table(std::size_t count);

/// m-th positive zero of J0 (m >= 1), memoized.
double bessel_j0_zero(int m);

/// McMahon's leading asymptotic (m - 1/4) pi, used as the Newton start.
double mcmahon_guess(int m);

/// Faddeeva function w(z) for finite z anywhere in the complex plane.
cdouble faddeeva(cdouble z);

/// w(z) for Im z >= 0 only (no reflection). Hot-path variant for kernels.
cdouble faddeeva_upper(cdouble z);

/// Lower half-plane pieces of the reflection identity
///   w(z) = 2 exp(-z^2) - w(-z),   Im z < 0.
/// The exponent -z^2 is returned unevaluated so callers can fold it into their
/// own Gaussian factors before exponentiating.
struct ReflectedFaddeeva {
  cdouble exponent;   // -z^2
  cdouble reflected;  // w(-z), upper half plane
};
ReflectedFaddeeva faddeeva_reflected(cdouble z);

struct SelfTestLine {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_error <= tolerance; }
};

/// Invariant checks behind `selftest-specfun`: real-axis identity, conjugation
/// symmetry, values on the imaginary axis, zero residuals, McMahon distance
/// and J1 sign interlacing.
std::vector<SelfTestLine> run_selftest();

}  // namespace harvest::specfun
