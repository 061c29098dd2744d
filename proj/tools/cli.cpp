#include "harvest/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "harvest/config.hpp"
#include "harvest/correlations.hpp"
#include "harvest/diagnostics.hpp"
#include "harvest/error.hpp"
#include "harvest/format.hpp"
#include "harvest/oracle.hpp"
#include "harvest/serialize.hpp"
#include "harvest/spectrum.hpp"
#include "harvest/sweep.hpp"
#include "harvest/version.hpp"

namespace harvest {
namespace {

// Flag values are kept apart from the config so only flags that were given
// override the file.
struct Flags {
  std::string config;
  std::string preset;
  double length_ratio = 0, radius_ratio = 0, tau = 0;
  double omega_t = 0, distance = 0, delay = 0, theta = 0, psi = 0, phi = 0;
  std::string parity;
  int max_m = 0, max_l = 0, hard_cap = 0;
  double tail_tol = 0;
  std::string out;
  int workers = 0;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  f.opts["config"] = cmd->add_option("--config", f.config, "JSON run configuration");
  f.opts["preset"] = cmd->add_option("--preset", f.preset, "microcavity|waveguide|disc|optical");
  f.opts["L"] = cmd->add_option("--length-ratio", f.length_ratio, "L/sigma");
  f.opts["R"] = cmd->add_option("--radius-ratio", f.radius_ratio, "R/sigma");
  f.opts["tau"] = cmd->add_option("--tau", f.tau, "c T / sigma");
  f.opts["omega"] = cmd->add_option("--omega-t", f.omega_t, "detector gap Omega T");
  f.opts["d"] = cmd->add_option("--d,--distance-ratio", f.distance, "D/sigma");
  f.opts["tba"] = cmd->add_option("--tba,--delay-ratio", f.delay, "t_BA/T");
  f.opts["theta"] = cmd->add_option("--theta,--tilt", f.theta, "relative tilt (rad)");
  f.opts["psi"] = cmd->add_option("--psi", f.psi, "Euler angle psi (ignored)");
  f.opts["phi"] = cmd->add_option("--phi", f.phi, "Euler angle phi (ignored)");
  f.opts["parity"] = cmd->add_option("--parity", f.parity, "all|even|odd");
  f.opts["max_m"] = cmd->add_option("--max-m", f.max_m, "radial cap");
  f.opts["max_l"] = cmd->add_option("--max-l", f.max_l, "longitudinal cap");
  f.opts["tail"] = cmd->add_option("--tail-tol", f.tail_tol, "relative tail tolerance");
  f.opts["hard"] = cmd->add_option("--hard-cap", f.hard_cap, "hard cap per index");
  f.opts["out"] = cmd->add_option("--out", f.out, "output file or prefix");
  f.opts["workers"] = cmd->add_option("-j,--workers", f.workers, "worker threads (default $HARVEST_WORKERS or 1)");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (auto env = workers_from_env()) cfg.workers = *env;
  if (f.given("config")) {
    std::ifstream in(f.config);
    if (!in) throw IoError("cannot read config file " + f.config);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file " + f.config + " is not valid JSON");
    apply_config_json(cfg, j);
  }
  if (f.given("preset")) cfg.preset = parse_preset(f.preset);
  if (f.given("L") || f.given("R")) {
    if (f.given("preset")) throw ConfigError("--preset cannot be combined with --length-ratio/--radius-ratio");
    cfg.preset.reset();
  }
  if (f.given("L")) cfg.geom.length_ratio = f.length_ratio;
  if (f.given("R")) cfg.geom.radius_ratio = f.radius_ratio;
  if (f.given("tau")) cfg.geom.tau = f.tau;
  if (f.given("omega")) cfg.det.omega_t = f.omega_t;
  if (f.given("d")) cfg.det.distance_ratio = f.distance;
  if (f.given("tba")) cfg.det.delay_ratio = f.delay;
  if (f.given("theta")) cfg.det.tilt = f.theta;
  if (f.given("psi")) cfg.det.psi = f.psi;
  if (f.given("phi")) cfg.det.phi = f.phi;
  if (f.given("parity")) cfg.filter = parse_parity(f.parity);
  if (f.given("max_m")) cfg.policy.max_m = f.max_m;
  if (f.given("max_l")) cfg.policy.max_l = f.max_l;
  if (f.given("tail")) cfg.policy.tail_tolerance = f.tail_tol;
  if (f.given("hard")) cfg.policy.hard_cap = f.hard_cap;
  if (f.given("out")) cfg.output = f.out;
  if (f.given("workers")) cfg.workers = f.workers;
  cfg.resolve();
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path);
  return file;
}

void check_written(std::ostream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

int cmd_eval(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = build_config(f);
  const auto warnings = validate_placement(cfg.geom, cfg.det);
  print_warnings(warnings, err);
  const CorrelationResult r = negativity(cfg.geom, cfg.det, cfg.filter, cfg.policy, cfg.workers);
  json doc = {{"config", cfg.to_json()}, {"result", to_json(r)}, {"warnings", warnings},
              {"version", kVersion}};
  if (cfg.output.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    auto file = open_output(cfg.output);
    file << doc.dump(2) << '\n';
    check_written(file, cfg.output);
  }
  return kExitOk;
}

int cmd_sweep(const Flags& f, const std::string& plan_path, bool fresh, std::ostream& out,
              std::ostream& err) {
  const RunConfig cfg = build_config(f);
  std::ifstream in(plan_path);
  if (!in) throw IoError("cannot read plan file " + plan_path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("plan file " + plan_path + " is not valid JSON");
  const SweepPlan plan = plan_from_json(j);
  const std::string prefix = cfg.output.empty() ? "sweep" : cfg.output;
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("output directory does not exist: " + parent.string());
  }

  SweepOptions options;
  options.workers = cfg.workers;
  options.checkpoint_path = prefix + ".points.jsonl";
  if (fresh) std::filesystem::remove(options.checkpoint_path);
  {
    std::ofstream probe(options.checkpoint_path, std::ios::app);
    if (!probe) throw IoError("cannot write " + options.checkpoint_path);
  }
  const SweepResult result = run_sweep(plan, options);

  {
    auto csv = open_output(prefix + ".csv");
    write_sweep_csv(csv, result);
    check_written(csv, prefix + ".csv");
  }
  {
    json doc = sweep_to_json(result);
    doc["metadata"]["config"] = cfg.to_json();
    auto file = open_output(prefix + ".json");
    file << doc.dump(2) << '\n';
    check_written(file, prefix + ".json");
  }
  {
    auto file = open_output(prefix + "_overlay.csv");
    try {
      write_overlay_csv(file, lightcone_overlay(plan));
    } catch (const DomainError& e) {
      write_overlay_csv(file, {});
      err << "note: " << e.what() << "; overlay left empty\n";
    }
    check_written(file, prefix + "_overlay.csv");
  }

  const SweepSummary s = summarize(result);
  if (result.resumed > 0) out << "resumed, " << result.computed << " points computed\n";
  out << "points: " << result.points.size() << " (computed " << result.computed << ", resumed "
      << result.resumed << ", failed " << s.failed << ")\n";
  out << "min negativity: " << fmt12(s.min_negativity) << "\n";
  out << "max negativity: " << fmt12(s.max_negativity) << "\n";
  out << "argmax:";
  for (std::size_t k = 0; k < s.argmax.size(); ++k) {
    out << ' ' << to_string(plan.axes[k].parameter) << '=' << fmt12(s.argmax[k]);
  }
  out << "\nparity checks: " << result.parity_checks << " (failures " << result.parity_failures << ")\n";
  out << "wall seconds: " << fmt12(result.wall_seconds) << "\n";
  out << "plan hash: " << result.plan_hash << "\n";
  return result.parity_failures == 0 ? kExitOk : kExitCheckFailed;
}

void write_diag(const RunConfig& cfg, int indices, std::ostream& beats, std::ostream& reduced) {
  beats << "quantity,index,value\n";
  for (int l = 0; l < indices; ++l) {
    beats << "beat_period_radial," << l << ',' << fmt12(beat_period_radial(l, cfg.geom)) << '\n';
  }
  for (int m = 1; m <= indices; ++m) {
    beats << "beat_period_longitudinal," << m << ',' << fmt12(beat_period_longitudinal(m, cfg.geom)) << '\n';
  }
  const BeatComparison cmp = beat_period_radial_vs_mpi(0, cfg.geom);
  beats << "beat_period_radial_mpi_estimate,0," << fmt12(cmp.approx) << '\n';
  beats << "beat_period_radial_mpi_relative_difference,0," << fmt12(cmp.relative_difference) << '\n';
  if (cfg.det.delay_ratio != 0.0) {
    for (int m = 1; m <= indices; ++m) {
      beats << "stationary_wavenumber," << m << ',' << fmt12(stationary_wavenumber(m, cfg.geom, cfg.det)) << '\n';
    }
  }
  beats << "overlap_magnitude,0," << fmt12(overlap_magnitude(cfg.det.distance_ratio)) << '\n';

  reduced << "kind,fixed_index,summed_cap,local,abs_nonlocal,re_nonlocal,im_nonlocal\n";
  auto row = [&](const ReducedSum& r, const char* kind) {
    reduced << kind << ',' << r.fixed_index << ',' << r.summed_cap << ',' << fmt12(r.local) << ','
            << fmt12(r.nonlocal) << ',' << fmt12(r.nonlocal_raw.real()) << ','
            << fmt12(r.nonlocal_raw.imag()) << '\n';
  };
  for (int l = 0; l < indices; ++l) row(reduced_radial(l, cfg.geom, cfg.det, cfg.policy), "radial");
  for (int m = 1; m <= indices; ++m) {
    row(reduced_longitudinal(m, cfg.geom, cfg.det, cfg.filter, cfg.policy), "longitudinal");
  }
}

int cmd_diag(const Flags& f, int indices, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = build_config(f);
  print_warnings(validate_placement(cfg.geom, cfg.det), err);
  if (indices < 1) throw ConfigError("--indices must be >= 1");
  if (cfg.output.empty()) {
    std::ostringstream beats;
    std::ostringstream reduced;
    write_diag(cfg, indices, beats, reduced);
    out << beats.str() << '\n' << reduced.str();
    return kExitOk;
  }
  auto beats = open_output(cfg.output + "_beats.csv");
  auto reduced = open_output(cfg.output + "_reduced.csv");
  write_diag(cfg, indices, beats, reduced);
  check_written(beats, cfg.output + "_beats.csv");
  check_written(reduced, cfg.output + "_reduced.csv");
  return kExitOk;
}

int cmd_converge(const Flags& f, const std::string& axis_name, double threshold, std::ostream& out,
                 std::ostream& err) {
  const RunConfig cfg = build_config(f);
  print_warnings(validate_placement(cfg.geom, cfg.det), err);
  CapAxis axis;
  if (axis_name == "l") {
    axis = CapAxis::Longitudinal;
  } else if (axis_name == "m") {
    axis = CapAxis::Radial;
  } else {
    throw ConfigError("--axis must be l or m");
  }
  const ConvergenceStudy study = converge(cfg.geom, cfg.det, cfg.filter, cfg.policy, axis, threshold);
  std::ostringstream table;
  table << "axis,cap,other_cap,local,abs_nonlocal,estimator,negativity,relative_change,flagged\n";
  for (const ConvergenceRung& r : study.rungs) {
    const int other = axis == CapAxis::Longitudinal ? r.result.truncation.max_m : r.result.truncation.max_l;
    table << axis_name << ',' << r.cap << ',' << other << ',' << fmt12(r.result.local) << ','
          << fmt12(std::abs(r.result.nonlocal)) << ',' << fmt12(r.result.estimator) << ','
          << fmt12(r.result.negativity) << ',' << fmt12(r.relative_change) << ','
          << (r.flagged ? 1 : 0) << '\n';
  }
  if (cfg.output.empty()) {
    out << table.str();
  } else {
    auto file = open_output(cfg.output);
    file << table.str();
    check_written(file, cfg.output);
  }
  if (!study.flagged_cap) {
    err << "ladder exhausted without a change below " << fmt12(threshold) << '\n';
    return kExitTruncation;
  }
  out << "# flagged cap max(" << axis_name << ") = " << *study.flagged_cap << '\n';
  return kExitOk;
}

int cmd_verify(int tuples, std::ostream& out) {
  const oracle::VerificationReport report = oracle::run_verification(tuples);
  for (const oracle::CheckLine& c : report.checks) {
    out << (c.pass() ? "PASS " : "FAIL ") << c.name << ": deviation " << fmt12(c.deviation)
        << " (tolerance " << fmt12(c.tolerance) << ")\n";
  }
  out << "random tuples: " << report.tuples << "\n";
  out << "max oracle deviation: " << fmt12(report.max_mode_deviation) << "\n";
  out << "smearing exponent ratio e^{-k^2}/e^{-k^2/2}, mode (1,0), R/sigma=10: "
      << fmt12(report.exponent_ratio) << "\n";
  out << (report.pass() ? "verify: PASS\n" : "verify: FAIL\n");
  return report.pass() ? kExitOk : kExitCheckFailed;
}

int cmd_selftest(std::ostream& out) {
  bool ok = true;
  for (const specfun::SelfTestLine& line : specfun::run_selftest()) {
    ok = ok && line.pass();
    out << (line.pass() ? "PASS " : "FAIL ") << line.name << ": max error " << fmt12(line.max_error)
        << " (tolerance " << fmt12(line.tolerance) << ")\n";
  }
  out << (ok ? "selftest-specfun: PASS\n" : "selftest-specfun: FAIL\n");
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_modes(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = build_config(f);
  print_warnings(validate_placement(cfg.geom, cfg.det), err);
  const ModeGrid grid = enumerate_modes(cfg.geom, cfg.det, cfg.policy);
  if (cfg.output.empty()) {
    write_mode_csv(out, grid, cfg.det);
  } else {
    auto file = open_output(cfg.output);
    write_mode_csv(file, grid, cfg.det);
    check_written(file, cfg.output);
  }
  err << "modes: max_m=" << grid.max_m() << " max_l=" << grid.max_l()
      << " tail_bound=" << fmt12(grid.report.tail_bound) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement harvesting in a cylindrical cavity", "harvest"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Flags eval_f, sweep_f, diag_f, conv_f, modes_f;
  auto* eval = app.add_subcommand("eval", "single point: local, non-local, negativity (JSON)");
  add_config_flags(eval, eval_f);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a plan file");
  add_config_flags(sweep, sweep_f);
  std::string plan_path;
  bool fresh = false;
  sweep->add_option("--plan", plan_path, "plan JSON")->required();
  sweep->add_flag("--fresh", fresh, "ignore persisted points");

  auto* diag = app.add_subcommand("diag", "beat periods and reduced sums (CSV)");
  add_config_flags(diag, diag_f);
  int indices = 3;
  diag->add_option("--indices", indices, "number of fixed indices per table");

  auto* conv = app.add_subcommand("converge", "convergence ladder of mode caps");
  add_config_flags(conv, conv_f);
  std::string axis = "l";
  double threshold = 1e-6;
  conv->add_option("--axis", axis, "l or m");
  conv->add_option("--threshold", threshold, "relative change that flags a cap");

  auto* verify = app.add_subcommand("verify", "quadrature oracle against the closed forms");
  int tuples = 24;
  verify->add_option("--tuples", tuples, "random parameter tuples");

  auto* selftest = app.add_subcommand("selftest-specfun", "special function invariants");

  auto* modes = app.add_subcommand("modes", "mode table (CSV)");
  add_config_flags(modes, modes_f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_f, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_f, plan_path, fresh, out, err);
    if (diag->parsed()) return cmd_diag(diag_f, indices, out, err);
    if (conv->parsed()) return cmd_converge(conv_f, axis, threshold, out, err);
    if (verify->parsed()) return cmd_verify(tuples, out);
    if (selftest->parsed()) return cmd_selftest(out);
    if (modes->parsed()) return cmd_modes(modes_f, out, err);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return kExitTruncation;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace harvest
