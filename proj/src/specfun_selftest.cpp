#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "harvest/specfun.hpp"

namespace harvest::specfun {

std::vector<SelfTestLine> run_selftest() {
  using std::numbers::pi;
  std::vector<SelfTestLine> out;

  double real_axis = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -20.0 + 0.01 * i;
    real_axis = std::max(real_axis, std::abs(faddeeva({x, 0.0}).real() - std::exp(-x * x)));
  }
  out.push_back({"Re w(x) - exp(-x^2), x in [-20, 20]", real_axis, 1e-10});

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double conj = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const cdouble z(u(rng), u(rng));
    const cdouble a = faddeeva(-std::conj(z));
    const cdouble b = std::conj(faddeeva(z));
    conj = std::max(conj, std::abs(a - b) / std::abs(b));
  }
  out.push_back({"w(-conj z) vs conj w(z), relative", conj, 1e-10});

  double imag_axis = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double y = 0.01 * i;
    const double want = std::exp(y * y) * std::erfc(y);
    imag_axis = std::max(imag_axis, std::abs(faddeeva({0.0, y}) - want) / want);
  }
  out.push_back({"w(iy) vs exp(y^2) erfc(y), relative", imag_axis, 1e-10});

  constexpr int kZeros = 1000;
  const auto table = bessel_zero_table(kZeros);
  double residual = 0.0;
  double mcmahon = 0.0;
  double ordering = 0.0;
  for (int m = 1; m <= kZeros; ++m) {
    const double chi = table->zeros[m - 1];
    residual = std::max(residual, std::abs(bessel_j0(chi)));
    mcmahon = std::max(mcmahon, std::abs(chi - (m - 0.25) * pi) - 1.0 / (4.0 * m));
    if (m > 1 && !(chi > table->zeros[m - 2])) ordering = 1.0;
    if (table->j1_at_zeros[m - 1] == 0.0) ordering = 1.0;
  }
  out.push_back({"|J0(chi_m)|, m <= 1000", residual, 1e-12});
  out.push_back({"|chi_m - (m - 1/4) pi| - 1/(4m), m <= 1000", std::max(0.0, mcmahon), 1e-3});
  out.push_back({"zeros increasing and J1(chi_m) != 0 (0 = ok)", ordering, 0.0});

  // Exactly one sign change of J1 between consecutive zeros of J0.
  double interlace = 0.0;
  for (int m = 1; m < 200; ++m) {
    const double a = table->zeros[m - 1];
    const double b = table->zeros[m];
    int changes = 0;
    double prev = bessel_j1(a);
    for (int k = 1; k <= 256; ++k) {
      const double v = bessel_j1(a + (b - a) * k / 256.0);
      if ((v > 0.0) != (prev > 0.0)) ++changes;
      prev = v;
    }
    interlace = std::max(interlace, std::abs(changes - 1.0));
  }
  out.push_back({"J1 sign changes between zeros minus one, m < 200", interlace, 0.0});
  return out;
}

}  // namespace harvest::specfun
