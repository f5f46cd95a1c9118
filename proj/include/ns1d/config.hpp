#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ns1d/core.hpp"
#include "ns1d/functionals.hpp"
#include "ns1d/model.hpp"
#include "ns1d/solver.hpp"

namespace ns1d {

struct ScanSettings {
  std::vector<double> s_list{0.5, 1.5, 2.0};
  double rho_min = 0.0;
  double rho_max = 10.0;
  std::size_t samples = 100000;
  double delta_bar = 0.5;

  void validate() const {
    if (s_list.empty()) throw config_error("scan.s_list must not be empty");
    for (double s : s_list)
      if (!(s > 0.0)) throw config_error("scan.s_list entries must be > 0");
    if (!(rho_max > rho_min)) throw config_error("scan.rho_max must exceed scan.rho_min");
    if (samples < 1000) throw config_error("scan.samples must be >= 1000");
    if (!(delta_bar > 0.0)) throw config_error("scan.delta_bar must be > 0");
  }
};

struct SweepSettings {
  std::vector<double> alphas;
  std::vector<double> gammas;
  std::vector<double> rho_bars;
};

/// Full experiment description; fully deterministic (no seeds anywhere).
struct ScenarioConfig {
  FluidParams params;
  double grid_half_width = 10.0;
  std::size_t grid_n = 256;
  InitialProfile profile;
  SchemeConfig scheme;
  DecayMetricParams decay;
  double decay_threshold = 0.1;
  double decay_f_envelope = 0.01;
  double vacuum_rho1 = 0.1;
  ScanSettings scan;
  SweepSettings sweep;
  std::vector<double> snapshot_times;
  std::string output_dir;

  Grid1D grid() const { return Grid1D::make(grid_half_width, grid_n); }

  void validate() const {
    params.validate();
    (void)grid();
    validate_profile(profile, params);
    scheme.validate();
    decay.validate(params);
    if (!(decay_threshold > 0.0)) throw config_error("decay.threshold must be > 0");
    if (!(decay_f_envelope > 0.0)) throw config_error("decay.f_envelope must be > 0");
    scan.validate();
    for (double a : sweep.alphas)
      if (!(a > 0.0)) throw config_error("sweep.alphas entries must be > 0");
    for (double g : sweep.gammas)
      if (!(g > 1.0)) throw config_error("sweep.gammas entries must be > 1");
    for (double r : sweep.rho_bars)
      if (!(r >= 0.0)) throw config_error("sweep.rho_bars entries must be >= 0");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': cannot parse '" + v + "' as a number");
  }
  if (pos != v.size())
    throw config_error("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x < 0.0 || x != std::floor(x))
    throw config_error("key '" + key + "': expected a nonnegative integer");
  return static_cast<std::size_t>(x);
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  return out;
}

inline std::vector<std::pair<double, double>> load_table(const std::string& key,
                                                         const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("key '" + key + "': cannot open table file " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    double x = 0.0, v = 0.0;
    if (!(ls >> x >> v)) throw config_error("key '" + key + "': bad row in " + path);
    rows.emplace_back(x, v);
  }
  if (rows.size() < 2) throw config_error("key '" + key + "': table needs >= 2 rows");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].first > rows[i - 1].first))
      throw config_error("key '" + key + "': table x values must be increasing");
  return rows;
}

inline InitialProfile::Kind parse_profile_kind(const std::string& v) {
  if (v == "constant") return InitialProfile::Kind::constant;
  if (v == "gaussian_bump") return InitialProfile::Kind::gaussian_bump;
  if (v == "vacuum_well") return InitialProfile::Kind::vacuum_well;
  if (v == "custom_table") return InitialProfile::Kind::custom_table;
  throw config_error("profile.kind: unknown value '" + v + "'");
}

inline InitialProfile::VelKind parse_vel_kind(const std::string& v) {
  if (v == "zero") return InitialProfile::VelKind::zero;
  if (v == "gaussian_bump") return InitialProfile::VelKind::gaussian_bump;
  if (v == "custom_table") return InitialProfile::VelKind::custom_table;
  throw config_error("profile.u0_kind: unknown value '" + v + "'");
}

}  // namespace detail

/// Parses the flat `section.key = value` document. Unknown and duplicate
/// keys are errors; syntax errors carry the line number. Defaults are
/// applied for every absent key and echoed back in summaries.
inline ScenarioConfig parse_config_text(const std::string& text) {
  using detail::trim;
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    // bare aliases for the minimal document
    if (key == "alpha") key = "params.alpha";
    else if (key == "gamma") key = "params.gamma";
    else if (key == "rho_bar") key = "params.rho_bar";
    else if (key == "M") key = "grid.M";
    else if (key == "n") key = "grid.n";
    else if (key == "t_end") key = "scheme.t_end";
    if (kv.count(key))
      throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  ScenarioConfig cfg;
  bool decay_s_given = false, decay_l_given = false;
  for (const auto& [key, value] : kv) {
    using detail::parse_count;
    using detail::parse_double;
    using detail::parse_list;
    if (key == "params.alpha") cfg.params.alpha = parse_double(key, value);
    else if (key == "params.gamma") cfg.params.gamma = parse_double(key, value);
    else if (key == "params.rho_bar") cfg.params.rho_bar = parse_double(key, value);
    else if (key == "params.eps_reg") cfg.params.eps_reg = parse_double(key, value);
    else if (key == "params.theta") cfg.params.theta = parse_double(key, value);
    else if (key == "params.delta_moment") cfg.params.delta_moment = parse_double(key, value);
    else if (key == "params.floor_c0") cfg.params.floor_c0 = parse_double(key, value);
    else if (key == "grid.M") cfg.grid_half_width = parse_double(key, value);
    else if (key == "grid.n") cfg.grid_n = parse_count(key, value);
    else if (key == "profile.kind") cfg.profile.kind = detail::parse_profile_kind(value);
    else if (key == "profile.amplitude") cfg.profile.amplitude = parse_double(key, value);
    else if (key == "profile.center") cfg.profile.center = parse_double(key, value);
    else if (key == "profile.width") cfg.profile.width = parse_double(key, value);
    else if (key == "profile.transition") cfg.profile.transition = parse_double(key, value);
    else if (key == "profile.u0_kind") cfg.profile.u0_kind = detail::parse_vel_kind(value);
    else if (key == "profile.u0_amplitude") cfg.profile.u0_amplitude = parse_double(key, value);
    else if (key == "profile.u0_center") cfg.profile.u0_center = parse_double(key, value);
    else if (key == "profile.u0_width") cfg.profile.u0_width = parse_double(key, value);
    else if (key == "profile.rho_table") cfg.profile.rho_table = detail::load_table(key, value);
    else if (key == "profile.u0_table") cfg.profile.u0_table = detail::load_table(key, value);
    else if (key == "scheme.cfl") cfg.scheme.cfl_number = parse_double(key, value);
    else if (key == "scheme.dt_max") cfg.scheme.dt_max = parse_double(key, value);
    else if (key == "scheme.rho_floor") cfg.scheme.rho_floor_eval = parse_double(key, value);
    else if (key == "scheme.t_end") cfg.scheme.t_end = parse_double(key, value);
    else if (key == "scheme.output_every") cfg.scheme.output_every = parse_double(key, value);
    else if (key == "decay.s") { cfg.decay.s = parse_double(key, value); decay_s_given = true; }
    else if (key == "decay.l") { cfg.decay.l = parse_double(key, value); decay_l_given = true; }
    else if (key == "decay.threshold") cfg.decay_threshold = parse_double(key, value);
    else if (key == "decay.f_envelope") cfg.decay_f_envelope = parse_double(key, value);
    else if (key == "vacuum.rho1") cfg.vacuum_rho1 = parse_double(key, value);
    else if (key == "scan.s_list") cfg.scan.s_list = parse_list(key, value);
    else if (key == "scan.rho_min") cfg.scan.rho_min = parse_double(key, value);
    else if (key == "scan.rho_max") cfg.scan.rho_max = parse_double(key, value);
    else if (key == "scan.samples") cfg.scan.samples = parse_count(key, value);
    else if (key == "scan.delta_bar") cfg.scan.delta_bar = parse_double(key, value);
    else if (key == "sweep.alphas") cfg.sweep.alphas = parse_list(key, value);
    else if (key == "sweep.gammas") cfg.sweep.gammas = parse_list(key, value);
    else if (key == "sweep.rho_bars") cfg.sweep.rho_bars = parse_list(key, value);
    else if (key == "output.dir") cfg.output_dir = value;
    else if (key == "output.snapshots") cfg.snapshot_times = parse_list(key, value);
    else throw config_error("unknown key '" + key + "'");
  }

  const DecayMetricParams dp = DecayMetricParams::defaults_for(cfg.params);
  if (!decay_s_given) cfg.decay.s = dp.s;
  if (!decay_l_given) cfg.decay.l = dp.l;

  cfg.validate();
  return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace ns1d
