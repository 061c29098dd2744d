#include "harvest/serialize.hpp"

#include <ostream>
#include <set>

#include "harvest/error.hpp"
#include "harvest/format.hpp"

namespace harvest {
namespace {

double maybe_round(double v, bool round) { return round ? round12(v) : v; }

// Non-finite doubles become null in nlohmann::json; keep them readable.
json number(double v, bool round) {
  if (!std::isfinite(v)) return fmt12(v);
  return maybe_round(v, round);
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw ConfigError(std::string("unknown key '") + k + "' in " + where);
  }
}

double get_number(const json& j, const char* key, const char* where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

}  // namespace

json to_json(const TruncationReport& r, bool round) {
  return {{"max_m", r.max_m},
          {"max_l", r.max_l},
          {"gaussian_tail", number(r.gaussian_tail, round)},
          {"tail_bound", number(r.tail_bound, round)},
          {"relative_tail", number(r.relative_tail, round)},
          {"mode_count", r.mode_count}};
}

TruncationReport truncation_from_json(const json& j) {
  TruncationReport r;
  r.max_m = j.at("max_m").get<int>();
  r.max_l = j.at("max_l").get<int>();
  r.gaussian_tail = j.at("gaussian_tail").get<double>();
  r.tail_bound = j.at("tail_bound").get<double>();
  r.relative_tail = j.at("relative_tail").get<double>();
  r.mode_count = j.at("mode_count").get<long long>();
  return r;
}

json to_json(const CorrelationResult& r, bool round) {
  return {{"local", number(r.local, round)},
          {"nonlocal", {{"re", number(r.nonlocal.real(), round)}, {"im", number(r.nonlocal.imag(), round)}}},
          {"abs_nonlocal", number(std::abs(r.nonlocal), round)},
          {"estimator", number(r.estimator, round)},
          {"negativity", number(r.negativity, round)},
          {"truncation", to_json(r.truncation, round)},
          {"lightcone", std::string(to_string(r.lightcone))},
          {"filter", std::string(to_string(r.filter))}};
}

CorrelationResult correlation_from_json(const json& j) {
  CorrelationResult r;
  r.local = j.at("local").get<double>();
  r.nonlocal = {j.at("nonlocal").at("re").get<double>(), j.at("nonlocal").at("im").get<double>()};
  r.estimator = j.at("estimator").get<double>();
  r.negativity = j.at("negativity").get<double>();
  r.truncation = truncation_from_json(j.at("truncation"));
  r.lightcone = j.at("lightcone").get<std::string>() == "timelike" ? Lightcone::Timelike
                                                                   : Lightcone::Spacelike;
  r.filter = parse_parity(j.at("filter").get<std::string>());
  return r;
}

json to_json(const CavityGeometry& g) {
  return {{"length_ratio", g.length_ratio}, {"radius_ratio", g.radius_ratio}, {"tau", g.tau}};
}

json to_json(const DetectorPair& d) {
  return {{"omega_t", d.omega_t},   {"distance_ratio", d.distance_ratio},
          {"delay_ratio", d.delay_ratio}, {"tilt", d.tilt},
          {"psi", d.psi},           {"phi", d.phi}};
}

json to_json(const TruncationPolicy& p) {
  json j = {{"tail_tolerance", p.tail_tolerance}, {"hard_cap", p.hard_cap}};
  j["max_m"] = p.max_m ? json(*p.max_m) : json(nullptr);
  j["max_l"] = p.max_l ? json(*p.max_l) : json(nullptr);
  return j;
}

json to_json(const SweepAxis& a) {
  return {{"parameter", std::string(to_string(a.parameter))},
          {"min", a.min},
          {"max", a.max},
          {"count", a.count},
          {"scale", std::string(to_string(a.scale))}};
}

json to_json(const SweepPlan& plan) {
  json axes = json::array();
  for (const SweepAxis& a : plan.axes) axes.push_back(to_json(a));
  CavityGeometry g = plan.geom;
  if (plan.preset) {
    const RegimePreset rp = regime_preset(*plan.preset);
    g.length_ratio = rp.length_ratio;
    g.radius_ratio = rp.radius_ratio;
  }
  // Swept parameters are left out of geometry/fixed so the form is canonical
  // and reads back through plan_from_json.
  json geometry = to_json(g);
  json fixed = to_json(plan.det);
  for (const SweepAxis& a : plan.axes) {
    const std::string key(to_string(a.parameter));
    geometry.erase(key);
    fixed.erase(key);
  }
  if (plan.preset) {
    geometry.erase("length_ratio");
    geometry.erase("radius_ratio");
  }
  return {{"axes", axes},
          {"preset", plan.preset ? json(std::string(to_string(*plan.preset))) : json(nullptr)},
          {"geometry", geometry},
          {"fixed", fixed},
          {"parity", std::string(to_string(plan.filter))},
          {"truncation", to_json(plan.policy)}};
}

SweepPlan plan_from_json(const json& j) {
  reject_unknown(j, {"axes", "preset", "geometry", "fixed", "parity", "truncation"}, "plan");
  SweepPlan plan;
  std::set<std::string> swept;
  if (j.contains("axes")) {
    if (!j["axes"].is_array()) throw ConfigError("plan.axes must be an array");
    for (const json& a : j["axes"]) {
      reject_unknown(a, {"parameter", "min", "max", "count", "scale"}, "plan.axes[]");
      SweepAxis axis;
      axis.parameter = parse_parameter(a.at("parameter").get<std::string>());
      axis.min = get_number(a, "min", "axis");
      axis.max = get_number(a, "max", "axis");
      axis.count = a.at("count").get<int>();
      axis.scale = parse_scale(a.value("scale", "linear"));
      swept.insert(std::string(to_string(axis.parameter)));
      plan.axes.push_back(axis);
    }
  }
  if (j.contains("preset") && !j["preset"].is_null()) {
    plan.preset = parse_preset(j["preset"].get<std::string>());
  }
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    reject_unknown(g, {"length_ratio", "radius_ratio", "tau"}, "plan.geometry");
    for (const char* key : {"length_ratio", "radius_ratio"}) {
      if (!g.contains(key)) continue;
      if (swept.count(key)) throw ConfigError(std::string("'") + key + "' is both swept and fixed");
      if (plan.preset) throw ConfigError(std::string("'") + key + "' conflicts with the preset");
    }
    if (g.contains("length_ratio")) plan.geom.length_ratio = get_number(g, "length_ratio", "geometry");
    if (g.contains("radius_ratio")) plan.geom.radius_ratio = get_number(g, "radius_ratio", "geometry");
    if (g.contains("tau")) plan.geom.tau = get_number(g, "tau", "geometry");
  }
  if (plan.preset) {
    const RegimePreset rp = regime_preset(*plan.preset);
    plan.geom.length_ratio = rp.length_ratio;
    plan.geom.radius_ratio = rp.radius_ratio;
  }
  if (j.contains("fixed")) {
    const json& f = j["fixed"];
    reject_unknown(f, {"omega_t", "distance_ratio", "delay_ratio", "tilt", "psi", "phi"}, "plan.fixed");
    for (const auto& [k, v] : f.items()) {
      if (swept.count(k)) throw ConfigError("'" + k + "' is both swept and fixed");
    }
    if (f.contains("omega_t")) plan.det.omega_t = get_number(f, "omega_t", "fixed");
    if (f.contains("distance_ratio")) plan.det.distance_ratio = get_number(f, "distance_ratio", "fixed");
    if (f.contains("delay_ratio")) plan.det.delay_ratio = get_number(f, "delay_ratio", "fixed");
    if (f.contains("tilt")) plan.det.tilt = get_number(f, "tilt", "fixed");
    if (f.contains("psi")) plan.det.psi = get_number(f, "psi", "fixed");
    if (f.contains("phi")) plan.det.phi = get_number(f, "phi", "fixed");
  }
  if (j.contains("parity")) plan.filter = parse_parity(j["parity"].get<std::string>());
  if (j.contains("truncation")) {
    const json& t = j["truncation"];
    reject_unknown(t, {"max_m", "max_l", "tail_tolerance", "hard_cap"}, "plan.truncation");
    if (t.contains("max_m") && !t["max_m"].is_null()) plan.policy.max_m = t["max_m"].get<int>();
    if (t.contains("max_l") && !t["max_l"].is_null()) plan.policy.max_l = t["max_l"].get<int>();
    if (t.contains("tail_tolerance")) plan.policy.tail_tolerance = get_number(t, "tail_tolerance", "truncation");
    if (t.contains("hard_cap")) plan.policy.hard_cap = t["hard_cap"].get<int>();
  }
  plan.validate();
  return plan;
}

json to_json(const ReducedSum& r) {
  return {{"kind", r.kind == ReducedKind::RadialAtFixedL ? "radial_at_fixed_l" : "longitudinal_at_fixed_m"},
          {"fixed_index", r.fixed_index},
          {"summed_cap", r.summed_cap},
          {"local", round12(r.local)},
          {"nonlocal", round12(r.nonlocal)},
          {"nonlocal_raw", {{"re", round12(r.nonlocal_raw.real())}, {"im", round12(r.nonlocal_raw.imag())}}}};
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  for (const SweepAxis& a : result.plan.axes) out << to_string(a.parameter) << ',';
  out << "local,re_nonlocal,im_nonlocal,abs_nonlocal,estimator,negativity,lightcone,max_m,max_l,"
         "tail_bound,error\n";
  for (const SweepPoint& p : result.points) {
    for (double c : p.coords) out << fmt12(c) << ',';
    if (p.result) {
      const CorrelationResult& r = *p.result;
      out << fmt12(r.local) << ',' << fmt12(r.nonlocal.real()) << ',' << fmt12(r.nonlocal.imag())
          << ',' << fmt12(std::abs(r.nonlocal)) << ',' << fmt12(r.estimator) << ','
          << fmt12(r.negativity) << ',' << to_string(r.lightcone) << ',' << r.truncation.max_m << ','
          << r.truncation.max_l << ',' << fmt12(r.truncation.tail_bound) << ",\n";
    } else {
      std::string msg = p.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      }
      out << "nan,nan,nan,nan,nan,nan,,,,nan," << msg << '\n';
    }
  }
}

json sweep_to_json(const SweepResult& result) {
  json points = json::array();
  for (const SweepPoint& p : result.points) {
    json coords = json::array();
    for (double c : p.coords) coords.push_back(round12(c));
    json jp = {{"coords", coords}};
    if (p.result) {
      jp["result"] = to_json(*p.result);
    } else {
      jp["error"] = p.error;
    }
    points.push_back(jp);
  }
  json axes = json::array();
  for (const SweepAxis& a : result.plan.axes) axes.push_back(std::string(to_string(a.parameter)));
  return {{"schema_version", kSweepSchemaVersion},
          {"metadata",
           {{"plan", to_json(result.plan)},
            {"plan_hash", result.plan_hash},
            {"version", result.version},
            {"tau", result.plan.geom.tau},
            {"filter", std::string(to_string(result.plan.filter))},
            {"preset", result.plan.preset ? json(std::string(to_string(*result.plan.preset))) : json(nullptr)},
            {"wall_seconds", round12(result.wall_seconds)},
            {"computed", result.computed},
            {"resumed", result.resumed},
            {"parity_checks", result.parity_checks},
            {"parity_failures", result.parity_failures}}},
          {"axes", axes},
          {"points", points}};
}

void write_overlay_csv(std::ostream& out, const std::vector<OverlayPoint>& overlay) {
  out << "distance_ratio,delay_ratio\n";
  for (const OverlayPoint& p : overlay) out << fmt12(p.distance_ratio) << ',' << fmt12(p.delay_ratio) << '\n';
}

}  // namespace harvest
