#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harvest/cli.hpp"
#include "harvest/config.hpp"
#include "harvest/error.hpp"
#include "harvest/serialize.hpp"

using namespace harvest;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "harvest_cli_unit";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval prints a result with 12 significant digits") {
  const Run r = run({"eval", "--preset", "microcavity", "--tba", "0.5"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  const json& res = j.at("result");
  CHECK(res.at("lightcone") == "spacelike");
  CHECK(res.at("negativity").get<double>() >= 0.0);
  CHECK(res.at("truncation").at("max_m").get<int>() > 0);
  const double v = res.at("local").get<double>();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  CHECK(std::strtod(buf, nullptr) == v);
}

TEST_CASE("parity filters add up through the CLI") {
  auto get = [](const char* parity) {
    const Run r = run({"eval", "--tba", "3", "--parity", parity});
    REQUIRE(r.code == kExitOk);
    return json::parse(r.out).at("result");
  };
  const json all = get("all"), even = get("even"), odd = get("odd");
  CHECK(all.at("local").get<double>() ==
        doctest::Approx(even.at("local").get<double>() + odd.at("local").get<double>()).epsilon(1e-11));
  const double re = even.at("nonlocal").at("re").get<double>() + odd.at("nonlocal").at("re").get<double>();
  CHECK(all.at("nonlocal").at("re").get<double>() == doctest::Approx(re).epsilon(1e-11));
}

TEST_CASE("tilt of pi/2 kills the non-local term") {
  const Run r = run({"eval", "--theta", "1.5707963267948966"});
  REQUIRE(r.code == kExitOk);
  const json res = json::parse(r.out).at("result");
  CHECK(std::abs(res.at("abs_nonlocal").get<double>()) < 1e-15);
  CHECK(res.at("negativity").get<double>() == 0.0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eval", "--parity", "sideways"}).code == kExitUsage);
  CHECK(run({"eval", "--d", "25"}).code == kExitUsage);
  CHECK(run({"eval", "--preset", "planar"}).code == kExitUsage);
  CHECK(run({"eval", "--length-ratio", "-1"}).code == kExitUsage);
  CHECK(run({"converge", "--axis", "q"}).code == kExitUsage);
}

TEST_CASE("truncation failure exits 3") {
  const Run r = run({"eval", "--preset", "optical", "--hard-cap", "20"});
  CHECK(r.code == kExitTruncation);
  CHECK(r.err.find("truncation") != std::string::npos);
}

TEST_CASE("io failures exit 4") {
  CHECK(run({"eval", "--out", "/nonexistent/dir/out.json"}).code == kExitIo);
  CHECK(run({"eval", "--config", "/nonexistent/config.json"}).code == kExitIo);
  CHECK(run({"sweep", "--plan", "/nonexistent/plan.json"}).code == kExitIo);
}

TEST_CASE("config file with flag overrides") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"preset": "microcavity", "detectors": {"delay_ratio": 2.0, "omega_t": 0.5},
                          "truncation": {"max_m": 4, "max_l": 6}})";
  Run r = run({"eval", "--config", cfg.string()});
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  CHECK(j.at("config").at("detectors").at("delay_ratio") == 2.0);
  CHECK(j.at("result").at("truncation").at("max_m") == 4);
  r = run({"eval", "--config", cfg.string(), "--tba", "1.0", "--max-m", "3"});
  REQUIRE(r.code == kExitOk);
  j = json::parse(r.out);
  CHECK(j.at("config").at("detectors").at("delay_ratio") == 1.0);
  CHECK(j.at("config").at("detectors").at("omega_t") == 0.5);
  CHECK(j.at("result").at("truncation").at("max_m") == 3);

  std::ofstream(cfg) << R"({"geometry": {"height": 3}})";
  CHECK(run({"eval", "--config", cfg.string()}).code == kExitUsage);
  std::ofstream(cfg) << "{not json";
  CHECK(run({"eval", "--config", cfg.string()}).code == kExitUsage);
}

TEST_CASE("HARVEST_WORKERS sets the default worker count") {
  ::setenv("HARVEST_WORKERS", "3", 1);
  CHECK(workers_from_env() == 3);
  Run r = run({"eval"});
  CHECK(json::parse(r.out).at("config").at("workers") == 3);
  r = run({"eval", "-j", "2"});
  CHECK(json::parse(r.out).at("config").at("workers") == 2);
  ::setenv("HARVEST_WORKERS", "many", 1);
  CHECK_THROWS_AS(workers_from_env(), ConfigError);
  CHECK(run({"eval"}).code == kExitUsage);
  ::unsetenv("HARVEST_WORKERS");
  CHECK(!workers_from_env().has_value());
}

TEST_CASE("sweep writes csv, json and overlay, then resumes") {
  const fs::path dir = scratch_dir();
  const fs::path plan = dir / "plan.json";
  std::ofstream(plan) << R"({"preset": "microcavity",
    "axes": [{"parameter": "distance_ratio", "min": 5, "max": 7, "count": 2},
             {"parameter": "delay_ratio", "min": 1, "max": 4, "count": 3, "scale": "log"}],
    "fixed": {"omega_t": 1.0}})";
  const std::string prefix = (dir / "s").string();
  Run r = run({"sweep", "--plan", plan.string(), "--out", prefix, "-j", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(prefix + ".csv"));
  CHECK(fs::exists(prefix + ".json"));
  CHECK(fs::exists(prefix + "_overlay.csv"));
  std::ifstream csv(prefix + ".csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("negativity") != std::string::npos);
  CHECK(header.find("lightcone") != std::string::npos);
  const json doc = json::parse(std::ifstream(prefix + ".json"));
  CHECK(doc.at("points").size() == 6);

  r = run({"sweep", "--plan", plan.string(), "--out", prefix});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("resumed, 0 points computed") != std::string::npos);
  r = run({"sweep", "--plan", plan.string(), "--out", prefix, "--fresh"});
  CHECK(r.out.find("resumed,") == std::string::npos);

  CHECK(run({"sweep", "--plan", plan.string(), "--out", (dir / "missing" / "s").string()}).code == kExitIo);
}

TEST_CASE("diag prints beat periods and reduced sums") {
  const Run r = run({"diag", "--preset", "microcavity", "--tba", "0.5", "--indices", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("beat_period_radial,0,6.72303470437") != std::string::npos);
  CHECK(r.out.find("kind,fixed_index,summed_cap,local") != std::string::npos);
  CHECK(r.out.find("overlap_magnitude,0,0.00193045413623") != std::string::npos);
}

TEST_CASE("modes dumps the table") {
  const Run r = run({"modes", "--max-m", "2", "--max-l", "1"});
  REQUIRE(r.code == kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("converge reports the flagged cap") {
  const Run r = run({"converge", "--preset", "microcavity", "--tba", "0.5", "--axis", "l"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# flagged cap max(l) = ") != std::string::npos);
  const Run never = run({"converge", "--axis", "l", "--threshold", "0", "--hard-cap", "20"});
  CHECK(never.code == kExitTruncation);
}

TEST_CASE("selftest-specfun passes") {
  const Run r = run({"selftest-specfun"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("selftest-specfun: PASS") != std::string::npos);
}
