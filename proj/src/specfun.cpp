#include "harvest/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "harvest/error.hpp"

namespace harvest::specfun {
namespace {

using std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

// Power series, accurate to a few ulp of max(|J|, 1e-16) for |x| < 8.
double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = -0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Miller backward recurrence normalized by J0 + 2 sum J_2k = 1. Used on the
// band where the series loses digits and the asymptotic series has not yet
// reached double precision.
void j01_miller(double x, double& j0, double& j1) {
  const int start = 2 * ((static_cast<int>(x) + 60) / 2);
  double next = 0.0;    // J_{k+1}
  double cur = 1e-280;  // J_k
  double norm = 0.0;
  double out0 = 0.0;
  double out1 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
    const int order = k - 1;
    if (order > 0 && order % 2 == 0) norm += 2.0 * cur;
    if (order == 1) out1 = cur;
  }
  out0 = cur;
  norm += out0;
  j0 = out0 / norm;
  j1 = out1 / norm;
}

// Hankel asymptotic expansion; |x| >= 25 gives full double precision.
double j_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last && k > 2) break;
    last = std::abs(term);
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (last < 1e-17) break;
  }
  // Phase chi = x - (order/2 + 1/4) pi expanded through cos x and sin x so no
  // rounding error from subtracting a multiple of pi is introduced.
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double r = std::numbers::sqrt2 / 2.0;
  double cos_chi = 0.0;
  double sin_chi = 0.0;
  if (order == 0) {
    cos_chi = r * (c + s);
    sin_chi = r * (s - c);
  } else {
    cos_chi = r * (s - c);
    sin_chi = -r * (s + c);
  }
  return std::sqrt(2.0 / (pi * x)) * (p * cos_chi - q * sin_chi);
}

double j0_positive(double x) {
  if (x < 8.0) return j0_series(x);
  if (x < 25.0) {
    double j0 = 0.0;
    double j1 = 0.0;
    j01_miller(x, j0, j1);
    return j0;
  }
  return j_asymptotic(0, x);
}

double j1_positive(double x) {
  if (x < 8.0) return j1_series(x);
  if (x < 25.0) {
    double j0 = 0.0;
    double j1 = 0.0;
    j01_miller(x, j0, j1);
    return j1;
  }
  return j_asymptotic(1, x);
}

double refine_zero(int m) {
  const double beta = (m - 0.25) * pi;
  double x = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta * beta * beta);
  for (int it = 0; it < 30; ++it) {
    const double step = j0_positive(x) / j1_positive(x);
    x += step;
    if (std::abs(step) <= 4e-16 * x) break;
  }
  return x;
}

std::mutex g_table_mutex;
std::shared_ptr<const BesselZeroTable> g_table = std::make_shared<BesselZeroTable>();

// Weideman's rational approximation of w(z) in the upper half plane,
//   w(z) ~ 2 p(Z) / (L - iz)^2 + 1 / (sqrt(pi) (L - iz)),  Z = (L + iz)/(L - iz),
// with the Taylor coefficients of p obtained from a trapezoidal (DFT)
// quadrature. N = 40 keeps the relative error near 1e-14.
constexpr int kWeidemanTerms = 40;

struct Weideman {
  double scale = 0.0;
  std::array<double, kWeidemanTerms> coeff{};  // coeff[n] multiplies Z^n

  Weideman() {
    constexpr int n_terms = kWeidemanTerms;
    constexpr int half = 2 * n_terms;
    constexpr int points = 2 * half;
    scale = std::sqrt(n_terms / std::numbers::sqrt2);
    std::array<double, points> samples{};
    samples[0] = 0.0;
    for (int k = -half + 1; k <= half - 1; ++k) {
      const double theta = k * pi / half;
      const double t = scale * std::tan(theta / 2.0);
      samples[static_cast<std::size_t>(k + half)] = std::exp(-t * t) * (scale * scale + t * t);
    }
    // fftshift followed by the real part of a forward DFT.
    for (int n = 1; n <= n_terms; ++n) {
      double acc = 0.0;
      for (int i = 0; i < points; ++i) {
        const double value = samples[static_cast<std::size_t>((i + half) % points)];
        acc += value * std::cos(2.0 * pi * double(n) * double(i) / points);
      }
      coeff[static_cast<std::size_t>(n - 1)] = acc / points;
    }
  }
};

const Weideman& weideman() {
  static const Weideman table;
  return table;
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  return j0_positive(std::abs(x));
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double v = j1_positive(std::abs(x));
  return x < 0.0 ? -v : v;
}

double bessel_j(int order, double x) {
  if (order == 0) return bessel_j0(x);
  if (order == 1) return bessel_j1(x);
  throw DomainError("bessel_j: only orders 0 and 1 are supported, got " + std::to_string(order));
}

double mcmahon_guess(int m) { return (m - 0.25) * pi; }

std::shared_ptr<const BesselZeroTable> bessel_zero_table(std::size_t count) {
  std::lock_guard lock(g_table_mutex);
  if (g_table->size() >= count) return g_table;
  auto grown = std::make_shared<BesselZeroTable>(*g_table);
  const std::size_t target = std::max<std::size_t>({count, 2 * g_table->size(), 64});
  grown->zeros.reserve(target);
  grown->j1_at_zeros.reserve(target);
  for (std::size_t m = grown->size() + 1; m <= target; ++m) {
    const double chi = refine_zero(static_cast<int>(m));
    grown->zeros.push_back(chi);
    grown->j1_at_zeros.push_back(j1_positive(chi));
  }
  g_table = std::move(grown);
  return g_table;
}

double bessel_j0_zero(int m) {
  if (m < 1) throw DomainError("bessel_j0_zero: index must be >= 1, got " + std::to_string(m));
  return bessel_zero_table(static_cast<std::size_t>(m))->zeros[static_cast<std::size_t>(m - 1)];
}

cdouble faddeeva_upper(cdouble z) {
  const double magnitude = std::abs(z);
  if (magnitude > 1e4) {
    // i/(sqrt(pi) z) (1 + 1/(2 z^2) + 3/(4 z^4)); truncation error ~ |z|^-7.
    const cdouble inv2 = 1.0 / (z * z);
    return cdouble(0.0, 1.0 / std::sqrt(pi)) / z * (1.0 + inv2 * (0.5 + 0.75 * inv2));
  }
  const Weideman& wd = weideman();
  const cdouble iz(-z.imag(), z.real());
  const cdouble denom = wd.scale - iz;
  const cdouble big_z = (wd.scale + iz) / denom;
  cdouble poly = wd.coeff[kWeidemanTerms - 1];
  for (int n = kWeidemanTerms - 2; n >= 0; --n) poly = poly * big_z + wd.coeff[static_cast<std::size_t>(n)];
  const cdouble inv = 1.0 / denom;
  const cdouble w = 2.0 * poly * inv * inv + inv / std::sqrt(pi);
  if (z.imag() == 0.0) return {std::exp(-z.real() * z.real()), w.imag()};
  return w;
}

ReflectedFaddeeva faddeeva_reflected(cdouble z) {
  return {-(z * z), faddeeva_upper(-z)};
}

cdouble faddeeva(cdouble z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("faddeeva: non-finite argument");
  }
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  const ReflectedFaddeeva parts = faddeeva_reflected(z);
  return 2.0 * std::exp(parts.exponent) - parts.reflected;
}

}  // namespace harvest::specfun
