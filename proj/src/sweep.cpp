#include "harvest/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <set>

#include "harvest/error.hpp"
#include "harvest/serialize.hpp"
#include "harvest/version.hpp"

namespace harvest {
namespace {

double& field(Parameter p, CavityGeometry& geom, DetectorPair& det) {
  switch (p) {
    case Parameter::LengthRatio: return geom.length_ratio;
    case Parameter::RadiusRatio: return geom.radius_ratio;
    case Parameter::DistanceRatio: return det.distance_ratio;
    case Parameter::OmegaT: return det.omega_t;
    case Parameter::DelayRatio: return det.delay_ratio;
  }
  throw ConfigError("unknown sweep parameter");
}

constexpr double kMinLength = 10.0;
constexpr double kMinRadius = 5.0;

// Checkpoint store: first line {"plan_hash": ...}, then one point per line.
std::vector<std::optional<SweepPoint>> load_checkpoint(const std::string& path,
                                                       const std::string& hash, std::size_t n) {
  std::vector<std::optional<SweepPoint>> out(n);
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line)) return out;
  json head = json::parse(line, nullptr, false);
  if (head.is_discarded() || head.value("plan_hash", "") != hash) return out;
  while (std::getline(in, line)) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("index") || !j.contains("result")) continue;  // torn write
    const auto index = j["index"].get<std::size_t>();
    if (index >= n) continue;
    SweepPoint p;
    p.coords = j["coords"].get<std::vector<double>>();
    p.result = correlation_from_json(j["result"]);
    out[index] = std::move(p);
  }
  return out;
}

}  // namespace

RegimePreset regime_preset(Preset p) {
  switch (p) {
    case Preset::Microcavity: return {p, 20.0, 10.0};
    case Preset::Waveguide: return {p, 1000.0, 10.0};
    case Preset::Disc: return {p, 20.0, 500.0};
    case Preset::Optical: return {p, 1000.0, 500.0};
  }
  throw ConfigError("unknown preset");
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::Microcavity: return "microcavity";
    case Preset::Waveguide: return "waveguide";
    case Preset::Disc: return "disc";
    case Preset::Optical: return "optical";
  }
  return "?";
}

Preset parse_preset(std::string_view text) {
  for (Preset p : kAllPresets) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError("unknown preset '" + std::string(text) +
                    "' (expected microcavity|waveguide|disc|optical)");
}

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::LengthRatio: return "length_ratio";
    case Parameter::RadiusRatio: return "radius_ratio";
    case Parameter::DistanceRatio: return "distance_ratio";
    case Parameter::OmegaT: return "omega_t";
    case Parameter::DelayRatio: return "delay_ratio";
  }
  return "?";
}

Parameter parse_parameter(std::string_view text) {
  for (Parameter p : {Parameter::LengthRatio, Parameter::RadiusRatio, Parameter::DistanceRatio,
                      Parameter::OmegaT, Parameter::DelayRatio}) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(text) + "'");
}

std::string_view to_string(AxisScale s) { return s == AxisScale::Log ? "log" : "linear"; }

AxisScale parse_scale(std::string_view text) {
  if (text == "linear") return AxisScale::Linear;
  if (text == "log") return AxisScale::Log;
  throw ConfigError("unknown axis scale '" + std::string(text) + "' (expected linear|log)");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : double(i) / double(count - 1);
    if (scale == AxisScale::Log) {
      v[i] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    } else {
      v[i] = min + f * (max - min);
    }
  }
  // Pin the end points exactly.
  v.front() = min;
  v.back() = max;
  return v;
}

void SweepPlan::validate() const {
  if (axes.size() > 2) throw ConfigError("a sweep has at most 2 axes");
  std::set<Parameter> seen;
  for (const SweepAxis& a : axes) {
    const std::string name(to_string(a.parameter));
    if (!seen.insert(a.parameter).second) throw ConfigError("axis '" + name + "' given twice");
    if (a.count < 2) throw ConfigError("axis '" + name + "' needs count >= 2");
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || a.min > a.max) {
      throw ConfigError("axis '" + name + "' needs finite min <= max");
    }
    if (a.scale == AxisScale::Log && !(a.min > 0.0)) {
      throw ConfigError("log axis '" + name + "' needs positive bounds");
    }
    if (preset && (a.parameter == Parameter::LengthRatio || a.parameter == Parameter::RadiusRatio)) {
      throw ConfigError("axis '" + name + "' conflicts with the preset geometry");
    }
  }
  policy.validate();
  CavityGeometry g = geom;
  if (preset) {
    const RegimePreset rp = regime_preset(*preset);
    g.length_ratio = rp.length_ratio;
    g.radius_ratio = rp.radius_ratio;
  }
  double lmin = g.length_ratio;
  double rmin = g.radius_ratio;
  for (const SweepAxis& a : axes) {
    if (a.parameter == Parameter::LengthRatio) lmin = a.min;
    if (a.parameter == Parameter::RadiusRatio) rmin = a.min;
  }
  if (lmin < kMinLength) throw ConfigError("length_ratio must be >= 10 in sweeps");
  if (rmin < kMinRadius) throw ConfigError("radius_ratio must be >= 5 in sweeps");
  g.validate();
  det.validate();
}

std::size_t SweepPlan::size() const {
  std::size_t n = 1;
  for (const SweepAxis& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::vector<double> SweepPlan::coordinates(std::size_t index) const {
  std::vector<double> c(axes.size());
  std::size_t rest = index;
  for (std::size_t k = axes.size(); k-- > 0;) {
    const auto count = static_cast<std::size_t>(axes[k].count);
    c[k] = axes[k].values()[rest % count];
    rest /= count;
  }
  return c;
}

void SweepPlan::point(std::size_t index, CavityGeometry& g, DetectorPair& d) const {
  g = geom;
  d = det;
  if (preset) {
    const RegimePreset rp = regime_preset(*preset);
    g.length_ratio = rp.length_ratio;
    g.radius_ratio = rp.radius_ratio;
  }
  const std::vector<double> c = coordinates(index);
  for (std::size_t k = 0; k < axes.size(); ++k) field(axes[k].parameter, g, d) = c[k];
}

std::uint64_t plan_hash(const SweepPlan& plan) {
  json j = to_json(plan);
  j["version"] = kVersion;
  const std::string text = j.dump();  // keys are sorted
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string plan_hash_hex(const SweepPlan& plan) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(plan_hash(plan)));
  return buf;
}

SweepResult run_sweep(const SweepPlan& plan, const SweepOptions& options) {
  plan.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = plan.size();
  SweepResult result;
  result.plan = plan;
  result.plan_hash = plan_hash_hex(plan);
  result.version = kVersion;
  result.points.resize(n);

  std::vector<std::optional<SweepPoint>> cached(n);
  std::ofstream store;
  if (!options.checkpoint_path.empty()) {
    cached = load_checkpoint(options.checkpoint_path, result.plan_hash, n);
    const bool fresh = std::none_of(cached.begin(), cached.end(), [](const auto& p) { return p.has_value(); });
    store.open(options.checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
    if (!store) throw IoError("cannot open checkpoint file " + options.checkpoint_path);
    if (fresh) store << json{{"plan_hash", result.plan_hash}}.dump() << '\n' << std::flush;
  }

  // Parity spot checks on a seeded random subset (at least one point).
  std::vector<char> check(n, 0);
  if (options.parity_check_fraction > 0.0 && n > 0) {
    std::mt19937_64 rng(options.parity_seed);
    const auto want = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(options.parity_check_fraction * double(n))));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < want; ++k) check[pick(rng)] = 1;
  }

  std::mutex store_mutex;
  std::size_t computed = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  const int threads = std::max(1, options.workers);
  const auto total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) reduction(+ : computed, checks, failures)
  for (long long i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    SweepPoint& out = result.points[idx];
    if (cached[idx]) {
      out = std::move(*cached[idx]);
      continue;
    }
    out.coords = plan.coordinates(idx);
    CavityGeometry g;
    DetectorPair d;
    plan.point(idx, g, d);
    try {
      validate_placement(g, d);
      const ModeGrid grid = enumerate_modes(g, d, plan.policy);
      const ParityParts parts = parity_parts(grid, d, 1);
      out.result = assemble(parts, grid, d, plan.filter);
      if (check[idx]) {
        // Independent evaluations per filter; All must equal Even + Odd exactly.
        const CorrelationResult all = evaluate(grid, d, ParityFilter::All);
        const CorrelationResult even = evaluate(grid, d, ParityFilter::EvenL);
        const CorrelationResult odd = evaluate(grid, d, ParityFilter::OddL);
        ++checks;
        if (all.nonlocal != even.nonlocal + odd.nonlocal || all.local != even.local + odd.local) {
          ++failures;
        }
      }
      ++computed;
    } catch (const std::exception& e) {
      out.result.reset();
      out.error = e.what();
      ++computed;
    }
    if (store.is_open() && out.result && !cached[idx]) {
      json line{{"index", idx}, {"coords", out.coords}, {"result", to_json(*out.result, false)}};
      std::lock_guard lock(store_mutex);
      store << line.dump() << '\n' << std::flush;
    }
  }
  result.computed = computed;
  result.resumed = n - computed;
  result.parity_checks = checks;
  result.parity_failures = failures;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<OverlayPoint> lightcone_overlay(const SweepPlan& plan, int samples) {
  const SweepAxis* d_axis = nullptr;
  const SweepAxis* t_axis = nullptr;
  for (const SweepAxis& a : plan.axes) {
    if (a.parameter == Parameter::DistanceRatio) d_axis = &a;
    if (a.parameter == Parameter::DelayRatio) t_axis = &a;
  }
  const double tau = plan.geom.tau;
  std::vector<OverlayPoint> out;
  if (d_axis && t_axis) {
    SweepAxis fine = *d_axis;
    fine.count = std::max(2, samples);
    for (double dist : fine.values()) {
      const double t = dist / tau;
      if (t >= t_axis->min && t <= t_axis->max) out.push_back({dist, t});
    }
    return out;
  }
  if (t_axis) {
    out.push_back({plan.det.distance_ratio, plan.det.distance_ratio / tau});
    return out;
  }
  if (d_axis) {
    out.push_back({tau * std::abs(plan.det.delay_ratio), plan.det.delay_ratio});
    return out;
  }
  throw DomainError("lightcone_overlay: plan sweeps neither distance_ratio nor delay_ratio");
}

SweepSummary summarize(const SweepResult& result) {
  SweepSummary s;
  s.min_negativity = std::numeric_limits<double>::infinity();
  s.max_negativity = -std::numeric_limits<double>::infinity();
  for (const SweepPoint& p : result.points) {
    if (!p.result) {
      ++s.failed;
      continue;
    }
    const double v = p.result->negativity;
    s.min_negativity = std::min(s.min_negativity, v);
    if (v > s.max_negativity) {
      s.max_negativity = v;
      s.argmax = p.coords;
    }
  }
  if (s.failed == result.points.size()) {
    s.min_negativity = s.max_negativity = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace harvest
