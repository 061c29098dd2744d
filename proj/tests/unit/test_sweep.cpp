#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harvest/error.hpp"
#include "harvest/serialize.hpp"
#include "harvest/sweep.hpp"

using namespace harvest;
namespace fs = std::filesystem;

namespace {

SweepPlan small_plan() {
  SweepPlan plan;
  plan.preset = Preset::Microcavity;
  plan.det.omega_t = 1.0;
  plan.axes.push_back({Parameter::DistanceRatio, 5.0, 9.0, 3, AxisScale::Linear});
  plan.axes.push_back({Parameter::DelayRatio, 0.5, 8.0, 4, AxisScale::Log});
  return plan;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "harvest_unit";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("presets") {
  CHECK(regime_preset(Preset::Microcavity).length_ratio == 20.0);
  CHECK(regime_preset(Preset::Microcavity).radius_ratio == 10.0);
  CHECK(regime_preset(Preset::Waveguide).length_ratio == 1000.0);
  CHECK(regime_preset(Preset::Waveguide).radius_ratio == 10.0);
  CHECK(regime_preset(Preset::Disc).length_ratio == 20.0);
  CHECK(regime_preset(Preset::Disc).radius_ratio == 500.0);
  CHECK(regime_preset(Preset::Optical).length_ratio == 1000.0);
  CHECK(regime_preset(Preset::Optical).radius_ratio == 500.0);
  for (Preset p : kAllPresets) CHECK(parse_preset(to_string(p)) == p);
  CHECK_THROWS_AS(parse_preset("planar"), ConfigError);
}

TEST_CASE("axis values pin both end points") {
  SweepAxis a{Parameter::DelayRatio, 5.0, 9.0, 60, AxisScale::Log};
  const auto v = a.values();
  REQUIRE(v.size() == 60);
  CHECK(v.front() == 5.0);
  CHECK(v.back() == 9.0);
  CHECK(v[1] / v[0] == doctest::Approx(v[59] / v[58]));
  SweepAxis b{Parameter::DistanceRatio, 5.0, 15.0, 11, AxisScale::Linear};
  CHECK(b.values()[3] == doctest::Approx(8.0));
}

TEST_CASE("plan validation") {
  SweepPlan p = small_plan();
  CHECK_NOTHROW(p.validate());
  p.axes[0].count = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = small_plan();
  p.axes[1].min = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = small_plan();
  p.axes[1].parameter = Parameter::DistanceRatio;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = small_plan();
  p.axes[1] = {Parameter::RadiusRatio, 5.0, 10.0, 3, AxisScale::Linear};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.preset.reset();
  CHECK_NOTHROW(p.validate());
  p.axes[1].min = 2.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = small_plan();
  p.preset.reset();
  p.geom.length_ratio = 8.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("row-major coordinates") {
  const SweepPlan p = small_plan();
  CHECK(p.size() == 12);
  const auto c = p.coordinates(5);  // row 1, column 1
  CHECK(c[0] == doctest::Approx(7.0));
  CHECK(c[1] == p.axes[1].values()[1]);
  CavityGeometry g;
  DetectorPair d;
  p.point(5, g, d);
  CHECK(g.length_ratio == 20.0);
  CHECK(d.distance_ratio == c[0]);
  CHECK(d.delay_ratio == c[1]);
}

TEST_CASE("plan json round trip and hash") {
  const SweepPlan p = small_plan();
  const SweepPlan q = plan_from_json(to_json(p));
  CHECK(plan_hash(p) == plan_hash(q));
  CHECK(plan_hash_hex(p).size() == 16);
  SweepPlan r = p;
  r.axes[1].count = 5;
  CHECK(plan_hash(p) != plan_hash(r));
  // swept values do not leak into the hash
  SweepPlan s = p;
  s.det.distance_ratio = 42.0;
  CHECK(plan_hash(p) == plan_hash(s));
}

TEST_CASE("plan json rejects unknown and conflicting keys") {
  json j = to_json(small_plan());
  j["colour"] = "blue";
  CHECK_THROWS_AS(plan_from_json(j), ConfigError);
  j = to_json(small_plan());
  j["fixed"]["delay_ratio"] = 1.0;
  CHECK_THROWS_AS(plan_from_json(j), ConfigError);
  j = to_json(small_plan());
  j["geometry"]["length_ratio"] = 30.0;
  CHECK_THROWS_AS(plan_from_json(j), ConfigError);
  j = to_json(small_plan());
  j["axes"][0]["parameter"] = "height";
  CHECK_THROWS_AS(plan_from_json(j), ConfigError);
}

TEST_CASE("sweep matches pointwise evaluation and is worker independent") {
  const SweepPlan p = small_plan();
  SweepOptions one;
  one.parity_check_fraction = 1.0;
  SweepOptions four = one;
  four.workers = 4;
  const SweepResult a = run_sweep(p, one);
  const SweepResult b = run_sweep(p, four);
  REQUIRE(a.points.size() == 12);
  CHECK(a.parity_checks >= 1);
  CHECK(a.parity_failures == 0);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    REQUIRE(a.points[i].result);
    REQUIRE(b.points[i].result);
    CHECK(a.points[i].result->negativity == b.points[i].result->negativity);
    CHECK(a.points[i].result->nonlocal == b.points[i].result->nonlocal);
    CavityGeometry g;
    DetectorPair d;
    p.point(i, g, d);
    const CorrelationResult direct = negativity(g, d, ParityFilter::All, p.policy);
    CHECK(direct.local == a.points[i].result->local);
    CHECK(direct.nonlocal == a.points[i].result->nonlocal);
  }
  std::ostringstream ca, cb;
  write_sweep_csv(ca, a);
  write_sweep_csv(cb, b);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("sweep resumes from its point store") {
  const fs::path store = scratch("resume.points.jsonl");
  const SweepPlan p = small_plan();
  SweepOptions opt;
  opt.checkpoint_path = store.string();
  const SweepResult first = run_sweep(p, opt);
  CHECK(first.computed == 12);
  CHECK(first.resumed == 0);

  // drop the last few points, as if interrupted
  std::vector<std::string> lines;
  {
    std::ifstream in(store);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  REQUIRE(lines.size() == 13);
  {
    std::ofstream out(store, std::ios::trunc);
    for (std::size_t i = 0; i < 9; ++i) out << lines[i] << '\n';
  }
  const SweepResult second = run_sweep(p, opt);
  CHECK(second.resumed == 8);
  CHECK(second.computed == 4);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(second.points[i].result->negativity == first.points[i].result->negativity);
    CHECK(second.points[i].result->nonlocal == first.points[i].result->nonlocal);
  }
  const SweepResult third = run_sweep(p, opt);
  CHECK(third.computed == 0);

  // a different plan ignores the store
  SweepPlan other = p;
  other.det.omega_t = 2.0;
  CHECK(run_sweep(other, opt).computed == 12);
}

TEST_CASE("failed points become error records") {
  SweepPlan p;
  p.geom.length_ratio = 20.0;
  p.axes.push_back({Parameter::DistanceRatio, 10.0, 30.0, 3, AxisScale::Linear});
  const SweepResult r = run_sweep(p);
  CHECK(r.points[0].result.has_value());
  CHECK(!r.points[2].result.has_value());
  CHECK(!r.points[2].error.empty());
  CHECK(summarize(r).failed == 2);
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  CHECK(csv.str().find("distance_ratio must be < length_ratio") != std::string::npos);
}

TEST_CASE("lightcone overlay") {
  const SweepPlan p = small_plan();
  const auto line = lightcone_overlay(p, 11);
  REQUIRE(!line.empty());
  for (const auto& o : line) CHECK(o.delay_ratio == doctest::Approx(o.distance_ratio / 3.0));
  SweepPlan only_t;
  only_t.det.distance_ratio = 6.0;
  only_t.axes.push_back({Parameter::DelayRatio, 0.5, 8.0, 4, AxisScale::Linear});
  const auto mark = lightcone_overlay(only_t);
  REQUIRE(mark.size() == 1);
  CHECK(mark[0].delay_ratio == doctest::Approx(2.0));
  SweepPlan neither;
  neither.axes.push_back({Parameter::OmegaT, 0.5, 2.0, 3, AxisScale::Linear});
  CHECK_THROWS_AS(lightcone_overlay(neither), DomainError);
}

TEST_CASE("summary and json output") {
  const SweepResult r = run_sweep(small_plan());
  const SweepSummary s = summarize(r);
  CHECK(s.failed == 0);
  CHECK(s.max_negativity >= s.min_negativity);
  REQUIRE(s.argmax.size() == 2);
  const json j = sweep_to_json(r);
  CHECK(j.at("schema_version") == kSweepSchemaVersion);
  CHECK(j.at("points").size() == 12);
  const CorrelationResult back = correlation_from_json(to_json(*r.points[3].result, false));
  CHECK(back.nonlocal == r.points[3].result->nonlocal);
  CHECK(back.truncation.max_l == r.points[3].result->truncation.max_l);
}
