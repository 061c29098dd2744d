#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <thread>
#include <vector>

#include "harvest/error.hpp"
#include "harvest/specfun.hpp"
#include "reference_values.hpp"

using namespace harvest;
using specfun::cdouble;

namespace {
double rel(cdouble got, cdouble want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("faddeeva matches mpmath reference points") {
  for (const auto& r : ref::kFaddeeva) {
    const cdouble w = specfun::faddeeva({r.re, r.im});
    CAPTURE(r.re);
    CAPTURE(r.im);
    CHECK(rel(w, {r.wr, r.wi}) < 1e-13);
  }
}

TEST_CASE("faddeeva at i is e erfc(1)") {
  // mpmath: 0.42758357615580700...
  CHECK(specfun::faddeeva({0.0, 1.0}).real() == doctest::Approx(0.427583576155807).epsilon(1e-15));
  CHECK(specfun::faddeeva({0.0, 1.0}).imag() == 0.0);
}

TEST_CASE("faddeeva: conjugation and reflection identities") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const cdouble z{u(rng), u(rng)};
    // w(-conj z) = conj w(z)
    CHECK(rel(specfun::faddeeva(-std::conj(z)), std::conj(specfun::faddeeva(z))) < 1e-13);
    if (z.imag() < 0.0) {
      const auto r = specfun::faddeeva_reflected(z);
      const cdouble direct = 2.0 * std::exp(r.exponent) - r.reflected;
      CHECK(std::abs(direct - specfun::faddeeva(z)) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("faddeeva on the real axis: Re w(x) = exp(-x^2)") {
  for (double x = -7.0; x <= 7.0; x += 0.37) {
    CHECK(specfun::faddeeva({x, 0.0}).real() == doctest::Approx(std::exp(-x * x)).epsilon(1e-13));
  }
}

TEST_CASE("faddeeva_upper agrees with faddeeva in the upper half plane") {
  for (double x = -5.0; x <= 5.0; x += 0.7) {
    for (double y = 0.0; y <= 5.0; y += 0.9) {
      CHECK(specfun::faddeeva_upper({x, y}) == specfun::faddeeva({x, y}));
    }
  }
}

TEST_CASE("bessel J0/J1 against mpmath") {
  for (const auto& b : ref::kBessel) {
    CAPTURE(b.x);
    CHECK(std::abs(specfun::bessel_j0(b.x) - b.j0) < 2e-15 * std::max(1.0, std::abs(b.x)));
    CHECK(std::abs(specfun::bessel_j1(b.x) - b.j1) < 2e-15 * std::max(1.0, std::abs(b.x)));
  }
  CHECK(specfun::bessel_j(0, 3.3) == specfun::bessel_j0(3.3));
  CHECK(specfun::bessel_j(1, 3.3) == specfun::bessel_j1(3.3));
}

TEST_CASE("bessel rejects other orders and non-finite input") {
  CHECK_THROWS_AS(specfun::bessel_j(2, 1.0), DomainError);
  CHECK_THROWS_AS(specfun::bessel_j0(std::nan("")), DomainError);
  CHECK_THROWS_AS(specfun::bessel_j1(INFINITY), DomainError);
}

TEST_CASE("zeros of J0 against mpmath") {
  for (const auto& z : ref::kJ0Zeros) {
    CAPTURE(z.m);
    CHECK(specfun::bessel_j0_zero(z.m) == doctest::Approx(z.chi).epsilon(2e-15));
    const auto table = specfun::bessel_zero_table(static_cast<std::size_t>(z.m));
    CHECK(table->j1_at_zeros[z.m - 1] == doctest::Approx(z.j1).epsilon(1e-13));
  }
}

TEST_CASE("zeros are strictly increasing with spacing near pi") {
  const auto t = specfun::bessel_zero_table(2000);
  REQUIRE(t->size() >= 2000);
  for (std::size_t i = 1; i < 2000; ++i) {
    const double gap = t->zeros[i] - t->zeros[i - 1];
    CHECK(gap > 3.1152);
    CHECK(gap < 3.1416 + 0.01);
  }
  // McMahon leading term gets closer with m
  CHECK(std::abs(t->zeros[1999] - specfun::mcmahon_guess(2000)) < 1e-4);
}

TEST_CASE("zero table grows safely from many threads") {
  std::vector<std::thread> pool;
  std::vector<double> got(8);
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([&, i] { got[i] = specfun::bessel_j0_zero(3000 + 100 * i); });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(specfun::bessel_j0(got[i])) < 1e-13);
  }
}

TEST_CASE("selftest lines all pass") {
  const auto lines = specfun::run_selftest();
  REQUIRE(!lines.empty());
  for (const auto& l : lines) {
    CAPTURE(l.name);
    CHECK(l.pass());
  }
}
