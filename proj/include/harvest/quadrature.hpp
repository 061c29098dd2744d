#pragma once

// Globally adaptive 15-point Gauss-Kronrod quadrature for complex integrands.

#include <complex>
#include <functional>

namespace harvest {

struct QuadratureSpec {
  double absolute_tolerance = 1e-15;
  double relative_tolerance = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

/// Throws OracleError if the error estimate does not meet the tolerance
/// within spec.max_subdivisions intervals.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

}  // namespace harvest
