#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ns1d/config.hpp"
#include "ns1d/core.hpp"
#include "ns1d/outcome.hpp"

namespace ns1d {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvHeader =
    "t,mass,energy,bd_entropy,combined,visc_diss,press_diss,slope,sup_dev,min_rho,max_rho,"
    "decay_f,residual";

/// 17 significant digits: lossless binary64 round trip.
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline void ensure_parent_dir(const std::string& path) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw config_error("cannot create directory " + parent.string() + ": " + ec.message());
}

inline std::ofstream open_out(const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write " + path);
  return out;
}

}  // namespace detail

inline void write_timeseries_csv(const std::vector<FunctionalRecord>& records,
                                 const std::string& path) {
  auto out = detail::open_out(path);
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << format_g17(r.t) << ',' << format_g17(r.mass) << ',' << format_g17(r.energy) << ','
        << format_g17(r.bd_entropy) << ',' << format_g17(r.combined) << ','
        << format_g17(r.visc_dissipation) << ',' << format_g17(r.pressure_dissipation) << ','
        << format_g17(r.slope) << ',' << format_g17(r.sup_dev) << ',' << format_g17(r.min_rho)
        << ',' << format_g17(r.max_rho) << ',' << format_g17(r.decay_f) << ','
        << format_g17(r.balance_residual_norm) << "\n";
  }
  if (!out) throw config_error("write failed for " + path);
}

inline std::vector<FunctionalRecord> read_timeseries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw config_error("bad CSV header in " + path);
  std::vector<FunctionalRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[13];
    for (int i = 0; i < 13; ++i) {
      if (!std::getline(ss, cell, ',')) throw config_error("short CSV row in " + path);
      v[i] = std::strtod(cell.c_str(), nullptr);
    }
    FunctionalRecord r;
    r.t = v[0]; r.mass = v[1]; r.energy = v[2]; r.bd_entropy = v[3]; r.combined = v[4];
    r.visc_dissipation = v[5]; r.pressure_dissipation = v[6]; r.slope = v[7];
    r.sup_dev = v[8]; r.min_rho = v[9]; r.max_rho = v[10]; r.decay_f = v[11];
    r.balance_residual_norm = v[12];
    records.push_back(r);
  }
  return records;
}

/// Plain-text snapshot: `x rho u` per cell under a `# t=<time>` header.
inline void write_snapshot(const FluidState& state, const Grid1D& grid,
                           const std::string& path) {
  auto out = detail::open_out(path);
  out << "# t=" << format_g17(state.t) << "\n";
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    out << format_g17(grid.center(i)) << ' ' << format_g17(state.rho[i]) << ' '
        << format_g17(state.u[i]) << "\n";
  if (!out) throw config_error("write failed for " + path);
}

inline nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg) {
  using json = nlohmann::ordered_json;
  json j;
  j["params.alpha"] = cfg.params.alpha;
  j["params.gamma"] = cfg.params.gamma;
  j["params.rho_bar"] = cfg.params.rho_bar;
  j["params.eps_reg"] = cfg.params.eps_reg;
  j["params.theta"] = cfg.params.theta;
  j["params.delta_moment"] = cfg.params.delta_moment;
  j["params.floor_c0"] = cfg.params.floor_c0;
  j["grid.M"] = cfg.grid_half_width;
  j["grid.n"] = cfg.grid_n;
  switch (cfg.profile.kind) {
    case InitialProfile::Kind::constant: j["profile.kind"] = "constant"; break;
    case InitialProfile::Kind::gaussian_bump: j["profile.kind"] = "gaussian_bump"; break;
    case InitialProfile::Kind::vacuum_well: j["profile.kind"] = "vacuum_well"; break;
    case InitialProfile::Kind::custom_table: j["profile.kind"] = "custom_table"; break;
  }
  j["profile.amplitude"] = cfg.profile.amplitude;
  j["profile.center"] = cfg.profile.center;
  j["profile.width"] = cfg.profile.width;
  j["profile.transition"] = cfg.profile.transition;
  switch (cfg.profile.u0_kind) {
    case InitialProfile::VelKind::zero: j["profile.u0_kind"] = "zero"; break;
    case InitialProfile::VelKind::gaussian_bump: j["profile.u0_kind"] = "gaussian_bump"; break;
    case InitialProfile::VelKind::custom_table: j["profile.u0_kind"] = "custom_table"; break;
  }
  j["profile.u0_amplitude"] = cfg.profile.u0_amplitude;
  j["profile.u0_center"] = cfg.profile.u0_center;
  j["profile.u0_width"] = cfg.profile.u0_width;
  j["scheme.cfl"] = cfg.scheme.cfl_number;
  j["scheme.dt_max"] = cfg.scheme.dt_max;
  j["scheme.rho_floor"] = cfg.scheme.rho_floor_eval;
  j["scheme.t_end"] = cfg.scheme.t_end;
  j["scheme.output_every"] = cfg.scheme.output_every;
  j["decay.s"] = cfg.decay.s;
  j["decay.l"] = cfg.decay.l;
  j["decay.threshold"] = cfg.decay_threshold;
  j["decay.f_envelope"] = cfg.decay_f_envelope;
  j["vacuum.rho1"] = cfg.vacuum_rho1;
  j["scan.s_list"] = cfg.scan.s_list;
  j["scan.rho_min"] = cfg.scan.rho_min;
  j["scan.rho_max"] = cfg.scan.rho_max;
  j["scan.samples"] = cfg.scan.samples;
  j["scan.delta_bar"] = cfg.scan.delta_bar;
  j["sweep.alphas"] = cfg.sweep.alphas;
  j["sweep.gammas"] = cfg.sweep.gammas;
  j["sweep.rho_bars"] = cfg.sweep.rho_bars;
  j["output.snapshots"] = cfg.snapshot_times;
  j["output.dir"] = cfg.output_dir;
  // derived bookkeeping constants echoed for the record format
  j["derived.slope_normalization"] =
      cfg.params.alpha == 0.5
          ? 1.0
          : 1.0 / ((cfg.params.alpha - 0.5) * (cfg.params.alpha - 0.5));
  j["derived.decay_b"] = DecayMetricParams::b(cfg.params);
  return j;
}

/// Single JSON document with stable key order. NaN measured values are
/// serialized as the string "nan" and force pass = false.
inline nlohmann::ordered_json outcome_to_json(const ExperimentOutcome& outcome,
                                              const ScenarioConfig* cfg) {
  using json = nlohmann::ordered_json;
  bool pass = outcome.pass;
  json measured = json::object();
  for (const auto& [key, value] : outcome.measured) {
    if (std::isnan(value)) {
      measured[key] = "nan";
      pass = false;
    } else if (std::isinf(value)) {
      measured[key] = value > 0 ? "inf" : "-inf";
    } else {
      measured[key] = value;
    }
  }
  json j;
  j["name"] = outcome.name;
  j["pass"] = pass;
  j["measured"] = measured;
  j["config"] = cfg ? config_to_json(*cfg) : json::object();
  j["artifact_paths"] = outcome.artifacts;
  j["tool_version"] = kToolVersion;
  return j;
}

inline void write_summary_json(const ExperimentOutcome& outcome, const ScenarioConfig* cfg,
                               const std::string& path) {
  auto out = detail::open_out(path);
  out << outcome_to_json(outcome, cfg).dump(2) << "\n";
  if (!out) throw config_error("write failed for " + path);
}

}  // namespace ns1d
