#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "ns1d/io.hpp"
#include "ns1d/outcome.hpp"
#include "ns1d/run.hpp"

namespace ns1d {

namespace detail {

/// NaN anywhere in the measured map forces pass = false.
inline void finalize_outcome(ExperimentOutcome& o) {
  for (const auto& [k, v] : o.measured)
    if (std::isnan(v)) o.pass = false;
}

inline void emit_run_artifacts(const RunResult& run, const ScenarioConfig& scenario,
                               const std::string& name, ExperimentOutcome& o) {
  if (scenario.output_dir.empty()) return;
  const std::string dir = scenario.output_dir + "/" + name;
  const std::string series = dir + "/series.csv";
  write_timeseries_csv(run.records, series);
  o.artifacts.push_back(series);
  for (const auto& [t, snap] : run.snapshots) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", t);
    const std::string path = dir + "/snapshot_" + buf + ".txt";
    write_snapshot(snap, scenario.grid(), path);
    o.artifacts.push_back(path);
  }
}

inline void emit_summary(ExperimentOutcome& o, const ScenarioConfig& scenario,
                         const std::string& name) {
  if (scenario.output_dir.empty()) return;
  const std::string path = scenario.output_dir + "/" + name + "/summary.json";
  o.artifacts.push_back(path);
  write_summary_json(o, &scenario, path);
}

inline double ratio_or_zero(double num, double den) {
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace detail

/// Measures sup|rho - rho_bar| decay and the envelope of f(t) over one run.
/// Passes when sup_dev(t_end)/sup_dev(0) <= threshold and f(t_end) is within
/// the configured fraction of max_t f(t).
inline ExperimentOutcome decay_experiment(const ScenarioConfig& scenario,
                                          const DecayMetricParams& dp, double threshold) {
  scenario.validate();
  dp.validate(scenario.params);
  ScenarioConfig sc = scenario;
  sc.decay = dp;
  const RunResult run = run_transient(sc);

  ExperimentOutcome o;
  o.name = "decay";
  if (!run.ok()) {
    o.note = run.error;
    o.pass = false;
    o.add("run_failed", 1.0);
  } else {
    const double sup0 = run.records.front().sup_dev;
    const double supT = run.records.back().sup_dev;
    double f_max = 0.0;
    for (const auto& r : run.records) f_max = std::max(f_max, r.decay_f);
    const double fT = run.records.back().decay_f;
    const double ratio = detail::ratio_or_zero(supT, sup0);
    const double f_ratio = detail::ratio_or_zero(fT, f_max);
    o.add("sup_dev_initial", sup0);
    o.add("sup_dev_final", supT);
    o.add("sup_dev_ratio", ratio);
    o.add("f_max", f_max);
    o.add("f_final", fT);
    o.add("f_ratio", f_ratio);
    o.add("threshold", threshold);
    o.add("f_envelope", sc.decay_f_envelope);
    o.add("floored_evaluations", static_cast<double>(run.floored_evaluations));
    o.pass = ratio <= threshold && f_ratio <= sc.decay_f_envelope;
  }
  detail::finalize_outcome(o);
  detail::emit_run_artifacts(run, sc, o.name, o);
  detail::emit_summary(o, sc, o.name);
  return o;
}

/// Vacuum-vanishing detector: T0 is the first sample time after which
/// min_x rho >= rho1 holds for every remaining sample; reported as the
/// right endpoint of the bracketing sample interval.
inline ExperimentOutcome vacuum_vanish_experiment(const ScenarioConfig& scenario,
                                                  double rho1) {
  scenario.validate();
  if (!(scenario.params.alpha > 0.5))
    throw config_error("vacuum experiment requires alpha > 1/2");
  if (!(scenario.params.rho_bar > 0.0))
    throw config_error("vacuum experiment requires rho_bar > 0");
  if (!(rho1 > 0.0 && rho1 < scenario.params.rho_bar))
    throw config_error("vacuum.rho1 must satisfy 0 < rho1 < rho_bar");

  const RunResult run = run_transient(scenario);
  ExperimentOutcome o;
  o.name = "vacuum";
  if (!run.ok()) {
    o.note = run.error;
    o.pass = false;
    o.add("run_failed", 1.0);
  } else {
    // last sample below rho1 determines the bracketing interval
    std::ptrdiff_t last_below = -1;
    for (std::size_t i = 0; i < run.records.size(); ++i)
      if (run.records[i].min_rho < rho1) last_below = static_cast<std::ptrdiff_t>(i);
    const bool detected = last_below + 1 < static_cast<std::ptrdiff_t>(run.records.size());
    const double t0 = detected ? run.records[static_cast<std::size_t>(last_below + 1)].t
                               : std::numeric_limits<double>::infinity();
    o.add("rho1", rho1);
    o.add("T0", t0);
    o.add("min_rho_initial", run.records.front().min_rho);
    o.add("min_rho_final", run.records.back().min_rho);
    o.add("detected", detected ? 1.0 : 0.0);
    o.pass = detected && t0 < scenario.scheme.t_end;
    if (detected && t0 == 0.0) o.pass = true;  // no-vacuum data: vacuous pass
  }
  detail::finalize_outcome(o);
  detail::emit_run_artifacts(run, scenario, o.name, o);
  detail::emit_summary(o, scenario, o.name);
  return o;
}

namespace detail {

struct HalfMaxima {
  double first = 0.0;
  double second = 0.0;
};

template <typename Get>
HalfMaxima half_maxima(const std::vector<FunctionalRecord>& records, double t_mid, Get get) {
  HalfMaxima h;
  for (const auto& r : records) {
    if (r.t <= t_mid)
      h.first = std::max(h.first, get(r));
    else
      h.second = std::max(h.second, get(r));
  }
  return h;
}

}  // namespace detail

/// Uniform-in-time bound check on a long-horizon run: the second-half maxima
/// of {G, max rho, 1/min rho} must not exceed the first-half maxima beyond a
/// 1e-3 relative slack. With eps_reg > 0 the run is repeated with eps/2 and
/// the G-bound must move by less than 5%.
inline ExperimentOutcome uniform_bound_experiment(const ScenarioConfig& scenario) {
  scenario.validate();
  if (scenario.scheme.t_end < 200.0)
    throw config_error("uniform bound experiment requires scheme.t_end >= 200");
  const RunResult run = run_transient(scenario);

  ExperimentOutcome o;
  o.name = "bounds";
  if (!run.ok()) {
    o.note = run.error;
    o.pass = false;
    o.add("run_failed", 1.0);
  } else {
    const double t_mid = 0.5 * scenario.scheme.t_end;
    const auto g = detail::half_maxima(run.records, t_mid,
                                       [](const FunctionalRecord& r) { return r.combined; });
    const auto mx = detail::half_maxima(run.records, t_mid,
                                        [](const FunctionalRecord& r) { return r.max_rho; });
    const bool track_inv = scenario.params.rho_bar > 0.0;
    const auto inv = detail::half_maxima(
        run.records, t_mid, [](const FunctionalRecord& r) { return 1.0 / r.min_rho; });
    const double slack = 1.0 + 1e-3;
    o.add("g_max_first_half", g.first);
    o.add("g_max_second_half", g.second);
    o.add("max_rho_first_half", mx.first);
    o.add("max_rho_second_half", mx.second);
    if (track_inv) {
      o.add("inv_min_rho_first_half", inv.first);
      o.add("inv_min_rho_second_half", inv.second);
    }
    o.add("slack", slack);
    o.pass = g.second <= g.first * slack && mx.second <= mx.first * slack &&
             (!track_inv || inv.second <= inv.first * slack);

    if (scenario.params.eps_reg > 0.0) {
      ScenarioConfig probe = scenario;
      probe.params.eps_reg = 0.5 * scenario.params.eps_reg;
      probe.output_dir.clear();
      const RunResult run2 = run_transient(probe);
      if (!run2.ok()) {
        o.note = run2.error;
        o.pass = false;
      } else {
        double g_full = 0.0, g_half = 0.0;
        for (const auto& r : run.records) g_full = std::max(g_full, r.combined);
        for (const auto& r : run2.records) g_half = std::max(g_half, r.combined);
        const double change = detail::ratio_or_zero(std::abs(g_full - g_half), g_full);
        o.add("g_bound_eps", g_full);
        o.add("g_bound_eps_half", g_half);
        o.add("g_bound_rel_change", change);
        o.pass = o.pass && change < 0.05;
      }
    }
  }
  detail::finalize_outcome(o);
  detail::emit_run_artifacts(run, scenario, o.name, o);
  detail::emit_summary(o, scenario, o.name);
  return o;
}

/// Manufactured-solution refinement study: L1 order of the density error at
/// t = 1 over doubling resolutions, plus the entropy-balance residual
/// refinement ratios on sampled solution pairs.
inline ExperimentOutcome convergence_study(const FluidParams& params, int levels,
                                           const std::string& output_dir = "") {
  params.validate();
  if (levels < 3) throw config_error("mms levels must be >= 3");

  const double t_final = 1.0;
  const double half_width = 1.0;
  std::vector<double> errors, residuals;
  std::vector<std::size_t> cells;
  for (int k = 0; k < levels; ++k) {
    const std::size_t n = 128u << k;
    cells.push_back(n);
    const Grid1D grid = Grid1D::make(half_width, n);
    const MmsSolution mms = make_mms(grid, params);

    SchemeConfig cfg;
    cfg.mms_enabled = true;
    cfg.t_end = t_final;
    cfg.output_every = t_final;
    // dt proportional to dx, below the CFL bound of the manufactured fields
    const double c_max =
        std::sqrt(params.gamma * pow_of(mms.base + mms.amp, params.gamma - 1.0)) + mms.amp;
    const double dt_target = 0.3 * grid.dx / c_max;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_final / dt_target));
    const double dt = t_final / static_cast<double>(steps);

    FluidState state;
    state.rho.resize(n);
    state.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      state.rho[i] = mms.rho(grid.center(i), 0.0);
      state.u[i] = mms.u(grid.center(i), 0.0);
    }
    for (std::size_t s = 0; s < steps; ++s) state = step(state, params, grid, cfg, dt, &mms);

    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      l1 += std::abs(state.rho[i] - mms.rho(grid.center(i), t_final));
    errors.push_back(grid.dx * l1);

    // residual of the combined balance on sampled exact pairs, dt ~ dx
    FluidState prev, next;
    prev.t = 0.5;
    next.t = 0.5 + dt;
    prev.rho.resize(n); prev.u.resize(n); next.rho.resize(n); next.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.center(i);
      prev.rho[i] = mms.rho(x, prev.t);
      prev.u[i] = mms.u(x, prev.t);
      next.rho[i] = mms.rho(x, next.t);
      next.u[i] = mms.u(x, next.t);
    }
    residuals.push_back(entropy_balance_residual(prev, next, params, grid, &mms));
  }

  ExperimentOutcome o;
  o.name = "mms";
  double order_sum = 0.0;
  double min_residual_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const double order = std::log2(errors[k] / errors[k + 1]);
    order_sum += order;
    o.add("order_" + std::to_string(cells[k]) + "_" + std::to_string(cells[k + 1]), order);
    const double rr = residuals[k] / residuals[k + 1];
    min_residual_ratio = std::min(min_residual_ratio, rr);
    o.add("residual_ratio_" + std::to_string(cells[k]) + "_" + std::to_string(cells[k + 1]),
          rr);
  }
  const double mean_order = order_sum / static_cast<double>(errors.size() - 1);
  for (std::size_t k = 0; k < errors.size(); ++k) {
    o.add("l1_error_" + std::to_string(cells[k]), errors[k]);
    o.add("residual_" + std::to_string(cells[k]), residuals[k]);
  }
  o.add("mean_order", mean_order);
  o.add("min_residual_ratio", min_residual_ratio);
  o.pass = mean_order >= 0.8 && mean_order <= 1.3 && min_residual_ratio >= 1.8 &&
           errors.back() < errors.front();
  detail::finalize_outcome(o);
  if (!output_dir.empty()) {
    ScenarioConfig echo;
    echo.params = params;
    echo.output_dir = output_dir;
    const std::string path = output_dir + "/mms/summary.json";
    o.artifacts.push_back(path);
    write_summary_json(o, &echo, path);
  }
  return o;
}

/// Dense scans certifying the algebraic inequalities: the minimal C with
/// |rho^s - rho_bar^s| <= C |rho - rho_bar|^s away from rho_bar, and the
/// minimal quadratic lower-bound constant of the pressure potential for
/// gamma >= 2.
inline ExperimentOutcome inequality_scan(const FluidParams& params, const ScanSettings& scan,
                                         const std::string& output_dir = "") {
  params.validate();
  scan.validate();
  if (!(params.rho_bar > 0.0)) throw config_error("inequality scan requires rho_bar > 0");

  ExperimentOutcome o;
  o.name = "scan";
  bool all_finite = true;
  const double rb = params.rho_bar;
  const std::size_t n = scan.samples;
  for (double s : scan.s_list) {
    double c_min = 0.0;
    const double rbs = std::pow(rb, s);
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = scan.rho_min + (scan.rho_max - scan.rho_min) *
                                            static_cast<double>(i) /
                                            static_cast<double>(n - 1);
      const double dev = std::abs(rho - rb);
      if (dev < scan.delta_bar) continue;
      const double ratio = std::abs(std::pow(rho, s) - rbs) / std::pow(dev, s);
      c_min = std::max(c_min, ratio);
    }
    char key[64];
    std::snprintf(key, sizeof(key), "C_s_%g", s);
    o.add(key, c_min);
    all_finite = all_finite && std::isfinite(c_min);
  }

  double quad_c = std::numeric_limits<double>::infinity();
  if (params.gamma >= 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = scan.rho_min + (scan.rho_max - scan.rho_min) *
                                            static_cast<double>(i) /
                                            static_cast<double>(n - 1);
      const double d = rho - rb;
      if (std::abs(d) < 1e-6) continue;
      quad_c = std::min(quad_c, (params.gamma - 1.0) * rho_psi(rho, params) / (d * d));
    }
    o.add("quadratic_lower_c", quad_c);
    all_finite = all_finite && std::isfinite(quad_c);
  }
  o.add("samples", static_cast<double>(n));
  o.add("delta_bar", scan.delta_bar);
  o.pass = all_finite && (params.gamma < 2.0 || quad_c > 0.0);
  detail::finalize_outcome(o);
  if (!output_dir.empty()) {
    ScenarioConfig echo;
    echo.params = params;
    echo.scan = scan;
    echo.output_dir = output_dir;
    const std::string path = output_dir + "/scan/summary.json";
    o.artifacts.push_back(path);
    write_summary_json(o, &echo, path);
  }
  return o;
}

/// Runs decay + uniform-bound per (alpha, gamma, rho_bar) grid point with a
/// bounded worker pool. Results are keyed, not positional; per-point
/// configuration errors are recorded and the sweep continues.
inline std::vector<std::pair<std::string, ExperimentOutcome>> parameter_sweep(
    const ScenarioConfig& base, const std::vector<double>& alphas,
    const std::vector<double>& gammas, const std::vector<double>& rho_bars) {
  std::vector<std::pair<std::string, ScenarioConfig>> points;
  for (double a : alphas)
    for (double g : gammas)
      for (double r : rho_bars) {
        ScenarioConfig sc = base;
        sc.params.alpha = a;
        sc.params.gamma = g;
        sc.params.rho_bar = r;
        sc.decay = DecayMetricParams::defaults_for(sc.params);
        char key[96];
        std::snprintf(key, sizeof(key), "alpha=%g,gamma=%g,rho_bar=%g", a, g, r);
        if (!base.output_dir.empty()) {
          std::string sub = key;
          for (char& c : sub)
            if (c == '=' || c == ',') c = '_';
          sc.output_dir = base.output_dir + "/sweep/" + sub;
        }
        points.emplace_back(key, sc);
      }

  auto run_point = [](const ScenarioConfig& sc) -> ExperimentOutcome {
    ExperimentOutcome o;
    try {
      const ExperimentOutcome decay = decay_experiment(sc, sc.decay, sc.decay_threshold);
      const ExperimentOutcome bounds = uniform_bound_experiment(sc);
      o.name = "sweep_point";
      o.pass = decay.pass && bounds.pass;
      for (const auto& [k, v] : decay.measured) o.add("decay." + k, v);
      for (const auto& [k, v] : bounds.measured) o.add("bounds." + k, v);
      o.artifacts = decay.artifacts;
      o.artifacts.insert(o.artifacts.end(), bounds.artifacts.begin(), bounds.artifacts.end());
    } catch (const config_error& e) {
      o.name = "sweep_point";
      o.pass = false;
      o.add("config_error", 1.0);
      o.note = e.what();
    }
    detail::finalize_outcome(o);
    return o;
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     points.size()));
  std::vector<std::pair<std::string, ExperimentOutcome>> results(points.size());
  std::vector<std::future<void>> pool;
  std::size_t next = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&, w]() {
      for (std::size_t i = w; i < points.size(); i += workers)
        results[i] = {points[i].first, run_point(points[i].second)};
    }));
  }
  for (auto& f : pool) f.get();
  (void)next;
  return results;
}

}  // namespace ns1d
