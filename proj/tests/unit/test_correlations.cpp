#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harvest/correlations.hpp"
#include "harvest/error.hpp"
#include "reference_values.hpp"

using namespace harvest;

TEST_CASE("box sums against mpmath") {
  for (const auto& r : ref::kBoxSums) {
    CavityGeometry g{r.L, r.R, r.tau};
    DetectorPair d;
    d.distance_ratio = r.D;
    d.omega_t = r.omega_gap;
    d.delay_ratio = r.delay;
    d.tilt = r.tilt;
    TruncationPolicy p;
    p.max_m = r.max_m;
    p.max_l = r.max_l;
    const CorrelationResult res = negativity(g, d, ParityFilter::All, p);
    const cdouble want{r.nl_re, r.nl_im};
    CHECK(res.local == doctest::Approx(r.local).epsilon(1e-12));
    CHECK(std::abs(res.nonlocal - want) <= 1e-12 * std::abs(want));
    CHECK(res.estimator == doctest::Approx(std::abs(want) - r.local).epsilon(1e-10));
    CHECK(res.truncation.max_m == r.max_m);
    CHECK(res.truncation.max_l == r.max_l);
  }
}

TEST_CASE("local_term and nonlocal_term agree with negativity") {
  CavityGeometry g;
  DetectorPair d;
  d.delay_ratio = 1.5;
  const CorrelationResult r = negativity(g, d, ParityFilter::All, {});
  CHECK(local_term(g, d, ParityFilter::All, {}) == r.local);
  CHECK(nonlocal_term(g, d, ParityFilter::All, {}) == r.nonlocal);
}

TEST_CASE("parity filters add up exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    CavityGeometry g{10.0 + 90.0 * u(rng), 5.0 + 30.0 * u(rng), 3.0};
    DetectorPair d;
    d.distance_ratio = 1.0 + (g.length_ratio - 2.0) * u(rng);
    d.omega_t = 3.0 * u(rng);
    d.delay_ratio = -10.0 + 20.0 * u(rng);
    d.tilt = std::numbers::pi * u(rng);
    const auto all = negativity(g, d, ParityFilter::All, {});
    const auto even = negativity(g, d, ParityFilter::EvenL, {});
    const auto odd = negativity(g, d, ParityFilter::OddL, {});
    CHECK(all.local == even.local + odd.local);
    CHECK(all.nonlocal == even.nonlocal + odd.nonlocal);
    CHECK(all.negativity >= 0.0);
    CHECK(even.filter == ParityFilter::EvenL);
  }
}

TEST_CASE("tilt scales the non-local term by cos theta") {
  CavityGeometry g;
  DetectorPair d;
  d.delay_ratio = 0.5;
  const auto flat = negativity(g, d, ParityFilter::All, {});
  for (double th : {0.3, 1.0, 2.5, std::numbers::pi}) {
    d.tilt = th;
    const auto r = negativity(g, d, ParityFilter::All, {});
    CHECK(std::abs(r.nonlocal - std::cos(th) * flat.nonlocal) <= 1e-15 * std::abs(flat.nonlocal));
    CHECK(r.local == flat.local);
  }
  d.tilt = std::numbers::pi / 2;
  const auto perp = negativity(g, d, ParityFilter::All, {});
  CHECK(std::abs(perp.nonlocal) < 1e-15 * std::abs(flat.nonlocal));
  CHECK(perp.negativity == 0.0);
}

TEST_CASE("result does not depend on the worker count") {
  CavityGeometry g{100.0, 20.0, 3.0};
  DetectorPair d;
  d.delay_ratio = 4.0;
  const auto one = negativity(g, d, ParityFilter::All, {}, 1);
  for (int w : {2, 5}) {
    const auto many = negativity(g, d, ParityFilter::All, {}, w);
    CHECK(many.local == one.local);
    CHECK(many.nonlocal == one.nonlocal);
  }
}

TEST_CASE("negativity is max(0, |M| - L) and lightcone is classified") {
  CavityGeometry g;
  DetectorPair d;
  d.delay_ratio = 0.5;
  auto r = negativity(g, d, ParityFilter::All, {});
  CHECK(r.estimator == std::abs(r.nonlocal) - r.local);
  CHECK(r.negativity == std::max(0.0, r.estimator));
  CHECK(r.lightcone == Lightcone::Spacelike);
  d.delay_ratio = 2.0;  // tau * 2 = 6 > 5
  CHECK(negativity(g, d, ParityFilter::All, {}).lightcone == Lightcone::Timelike);
}

TEST_CASE("truncation tail bound covers a tighter evaluation") {
  CavityGeometry g;
  DetectorPair d;
  d.delay_ratio = 3.0;
  TruncationPolicy loose;
  loose.tail_tolerance = 1e-5;
  TruncationPolicy tight;
  tight.tail_tolerance = 1e-13;
  const auto a = negativity(g, d, ParityFilter::All, loose);
  const auto b = negativity(g, d, ParityFilter::All, tight);
  CHECK(std::abs(a.negativity - b.negativity) <= a.truncation.tail_bound);
  CHECK(std::abs(a.local - b.local) + std::abs(a.nonlocal - b.nonlocal) <= a.truncation.tail_bound);
}

TEST_CASE("evaluate rejects a grid built for another distance") {
  CavityGeometry g;
  DetectorPair d;
  const ModeGrid grid = enumerate_modes(g, d, {});
  d.distance_ratio = 6.0;
  CHECK_THROWS_AS(evaluate(grid, d, ParityFilter::All), ConfigError);
}

TEST_CASE("amplitude_E_scaled refuses non-finite input") {
  CHECK_THROWS_AS(amplitude_E_scaled(std::nan(""), 1.0), DomainError);
  CHECK_THROWS_AS(amplitude_E_scaled(1.0, INFINITY), DomainError);
}

TEST_CASE("invalid detectors are configuration errors") {
  CavityGeometry g;
  DetectorPair d;
  d.tilt = 4.0;
  CHECK_THROWS_AS(negativity(g, d, ParityFilter::All, {}), ConfigError);
  d.tilt = 0.0;
  d.omega_t = -1.0;
  CHECK_THROWS_AS(negativity(g, d, ParityFilter::All, {}), ConfigError);
}
