#include "harvest/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "harvest/error.hpp"
#include "harvest/serialize.hpp"

namespace harvest {
namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

double num(const json& j, const char* key) {
  if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

void RunConfig::resolve() {
  if (preset) {
    const RegimePreset rp = regime_preset(*preset);
    geom.length_ratio = rp.length_ratio;
    geom.radius_ratio = rp.radius_ratio;
  }
  geom.validate();
  det.validate();
  policy.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

json RunConfig::to_json() const {
  return {{"preset", preset ? json(std::string(to_string(*preset))) : json(nullptr)},
          {"geometry", harvest::to_json(geom)},
          {"detectors", harvest::to_json(det)},
          {"parity", std::string(to_string(filter))},
          {"truncation", harvest::to_json(policy)},
          {"output", output},
          {"workers", workers}};
}

void apply_config_json(RunConfig& cfg, const json& j) {
  check_keys(j, {"preset", "geometry", "detectors", "parity", "truncation", "output", "workers"}, "config");
  try {
    if (j.contains("preset") && !j["preset"].is_null()) cfg.preset = parse_preset(j["preset"].get<std::string>());
    if (j.contains("geometry")) {
      const json& g = j["geometry"];
      check_keys(g, {"length_ratio", "radius_ratio", "tau"}, "geometry");
      if (g.contains("length_ratio")) cfg.geom.length_ratio = num(g, "length_ratio");
      if (g.contains("radius_ratio")) cfg.geom.radius_ratio = num(g, "radius_ratio");
      if (g.contains("tau")) cfg.geom.tau = num(g, "tau");
    }
    if (j.contains("detectors")) {
      const json& d = j["detectors"];
      check_keys(d, {"omega_t", "distance_ratio", "delay_ratio", "tilt", "psi", "phi"}, "detectors");
      if (d.contains("omega_t")) cfg.det.omega_t = num(d, "omega_t");
      if (d.contains("distance_ratio")) cfg.det.distance_ratio = num(d, "distance_ratio");
      if (d.contains("delay_ratio")) cfg.det.delay_ratio = num(d, "delay_ratio");
      if (d.contains("tilt")) cfg.det.tilt = num(d, "tilt");
      if (d.contains("psi")) cfg.det.psi = num(d, "psi");
      if (d.contains("phi")) cfg.det.phi = num(d, "phi");
    }
    if (j.contains("parity")) cfg.filter = parse_parity(j["parity"].get<std::string>());
    if (j.contains("truncation")) {
      const json& t = j["truncation"];
      check_keys(t, {"max_m", "max_l", "tail_tolerance", "hard_cap"}, "truncation");
      if (t.contains("max_m") && !t["max_m"].is_null()) cfg.policy.max_m = integer(t, "max_m");
      if (t.contains("max_l") && !t["max_l"].is_null()) cfg.policy.max_l = integer(t, "max_l");
      if (t.contains("tail_tolerance")) cfg.policy.tail_tolerance = num(t, "tail_tolerance");
      if (t.contains("hard_cap")) cfg.policy.hard_cap = integer(t, "hard_cap");
    }
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("workers")) cfg.workers = integer(j, "workers");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file " + path + " is not valid JSON");
  RunConfig cfg;
  apply_config_json(cfg, j);
  return cfg;
}

std::optional<int> workers_from_env() {
  const char* raw = std::getenv("HARVEST_WORKERS");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) {
    throw ConfigError(std::string("HARVEST_WORKERS must be a positive integer, got '") + raw + "'");
  }
  return static_cast<int>(v);
}

}  // namespace harvest
