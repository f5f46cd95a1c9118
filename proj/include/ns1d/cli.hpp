#pragma once

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ns1d/experiments.hpp"
#include "ns1d/io.hpp"
#include "ns1d/run.hpp"

namespace ns1d {

namespace detail {

inline std::string resolve_output_dir(const std::string& flag, const std::string& from_cfg) {
  if (!flag.empty()) return flag;
  if (!from_cfg.empty()) return from_cfg;
  if (const char* env = std::getenv("NS1D_OUTPUT_DIR")) {
    if (*env) return env;
  }
  return "out";
}

inline void print_outcome(const ExperimentOutcome& o) {
  std::cout << o.name << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, v] : o.measured)
    std::cout << "  " << k << " = " << format_g17(v) << "\n";
  if (!o.note.empty()) std::cout << "  note: " << o.note << "\n";
  for (const auto& a : o.artifacts) std::cout << "  wrote " << a << "\n";
}

inline ExperimentOutcome run_scenario(const ScenarioConfig& scenario) {
  const RunResult run = run_transient(scenario);
  ExperimentOutcome o;
  o.name = "run";
  bool finite = true;
  for (const auto& r : run.records) {
    finite = finite && std::isfinite(r.mass) && std::isfinite(r.energy) &&
             std::isfinite(r.bd_entropy) && std::isfinite(r.combined) &&
             std::isfinite(r.visc_dissipation) && std::isfinite(r.pressure_dissipation) &&
             std::isfinite(r.slope) && std::isfinite(r.sup_dev) && std::isfinite(r.decay_f) &&
             std::isfinite(r.balance_residual_norm);
  }
  o.pass = run.ok() && finite;
  if (!run.ok()) o.note = run.error;
  o.add("steps", static_cast<double>(run.steps));
  o.add("samples", static_cast<double>(run.records.size()));
  o.add("mass_initial", run.records.front().mass);
  o.add("mass_final", run.records.back().mass);
  o.add("energy_initial", run.records.front().energy);
  o.add("energy_final", run.records.back().energy);
  o.add("floored_evaluations", static_cast<double>(run.floored_evaluations));
  o.add("case1_floor_breach", run.case1_floor_breach ? 1.0 : 0.0);
  detail::finalize_outcome(o);
  detail::emit_run_artifacts(run, scenario, o.name, o);
  detail::emit_summary(o, scenario, o.name);
  return o;
}

}  // namespace detail

/// Subcommand dispatch. Exit codes: 0 pass, 1 experiment fail, 2
/// configuration/usage error.
inline int dispatch(std::vector<std::string> args) {
  CLI::App app{"ns1d - one-dimensional compressible flow testbench"};
  app.require_subcommand(0, 1);
  std::string output_dir_flag;
  app.add_option("--output-dir", output_dir_flag, "override the configured output directory");

  std::string cfg_path;
  double rho1 = -1.0;
  double threshold = -1.0;
  int levels = 3;

  auto* cmd_run = app.add_subcommand("run", "time-integrate a scenario and record functionals");
  cmd_run->add_option("config", cfg_path, "scenario config file")->required();
  auto* cmd_decay = app.add_subcommand("decay", "long-time decay experiment");
  cmd_decay->add_option("config", cfg_path)->required();
  cmd_decay->add_option("--threshold", threshold, "sup-deviation ratio threshold");
  auto* cmd_vacuum = app.add_subcommand("vacuum", "vacuum-vanishing experiment");
  cmd_vacuum->add_option("config", cfg_path)->required();
  cmd_vacuum->add_option("--rho1", rho1, "target lower density bound");
  auto* cmd_mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  cmd_mms->add_option("--levels", levels, "number of refinement levels (>= 3)");
  auto* cmd_scan = app.add_subcommand("scan", "algebraic inequality scans");
  cmd_scan->add_option("config", cfg_path)->required();
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep of decay + bound experiments");
  cmd_sweep->add_option("config", cfg_path)->required();
  for (auto* sub : {cmd_run, cmd_decay, cmd_vacuum, cmd_mms, cmd_scan, cmd_sweep})
    sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    if (cmd_mms->parsed()) {
      FluidParams params;  // defaults: alpha=1, gamma=2, eps=0
      const std::string outdir = detail::resolve_output_dir(output_dir_flag, "");
      const ExperimentOutcome o = convergence_study(params, levels, outdir);
      detail::print_outcome(o);
      return o.pass ? 0 : 1;
    }

    ScenarioConfig cfg = parse_config_file(cfg_path);
    cfg.output_dir = detail::resolve_output_dir(output_dir_flag, cfg.output_dir);

    if (cmd_run->parsed()) {
      const ExperimentOutcome o = detail::run_scenario(cfg);
      detail::print_outcome(o);
      return o.pass ? 0 : 1;
    }
    if (cmd_decay->parsed()) {
      const double th = threshold > 0.0 ? threshold : cfg.decay_threshold;
      const ExperimentOutcome o = decay_experiment(cfg, cfg.decay, th);
      detail::print_outcome(o);
      return o.pass ? 0 : 1;
    }
    if (cmd_vacuum->parsed()) {
      const double r1 = rho1 > 0.0 ? rho1 : cfg.vacuum_rho1;
      const ExperimentOutcome o = vacuum_vanish_experiment(cfg, r1);
      detail::print_outcome(o);
      return o.pass ? 0 : 1;
    }
    if (cmd_scan->parsed()) {
      const ExperimentOutcome o = inequality_scan(cfg.params, cfg.scan, cfg.output_dir);
      detail::print_outcome(o);
      return o.pass ? 0 : 1;
    }
    if (cmd_sweep->parsed()) {
      SweepSettings sw = cfg.sweep;
      if (sw.alphas.empty()) sw.alphas = {cfg.params.alpha};
      if (sw.gammas.empty()) sw.gammas = {cfg.params.gamma};
      if (sw.rho_bars.empty()) sw.rho_bars = {cfg.params.rho_bar};
      const auto results = parameter_sweep(cfg, sw.alphas, sw.gammas, sw.rho_bars);
      bool all_pass = true;
      nlohmann::ordered_json table;
      for (const auto& [key, o] : results) {
        all_pass = all_pass && o.pass;
        nlohmann::ordered_json row;
        row["pass"] = o.pass;
        nlohmann::ordered_json measured = nlohmann::ordered_json::object();
        for (const auto& [k, v] : o.measured)
          measured[k] = std::isnan(v) ? nlohmann::ordered_json("nan")
                                      : nlohmann::ordered_json(v);
        row["measured"] = measured;
        if (!o.note.empty()) row["note"] = o.note;
        table[key] = row;
        std::cout << key << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
      }
      if (!cfg.output_dir.empty()) {
        const std::string path = cfg.output_dir + "/sweep/summary.json";
        auto out = detail::open_out(path);
        nlohmann::ordered_json doc;
        doc["name"] = "sweep";
        doc["pass"] = all_pass;
        doc["points"] = table;
        doc["tool_version"] = kToolVersion;
        out << doc.dump(2) << "\n";
        std::cout << "wrote " << path << "\n";
      }
      return all_pass ? 0 : 1;
    }
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ns1d
