#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ns1d/config.hpp"
#include "ns1d/functionals.hpp"
#include "ns1d/model.hpp"
#include "ns1d/solver.hpp"

namespace ns1d {

struct RunResult {
  std::vector<FunctionalRecord> records;
  FluidState final_state;
  std::vector<std::pair<double, FluidState>> snapshots;
  std::size_t steps = 0;
  std::size_t floored_evaluations = 0;
  bool case1_floor_breach = false;  ///< Case I density fell below the eval floor
  std::string error;                ///< empty on success

  bool ok() const { return error.empty(); }
};

/// Advances a scenario from t = 0 to t_end, sampling record_functionals at
/// every multiple of output_every (hit exactly by clipping dt) and emitting
/// snapshots at the configured times. Deterministic given the scenario; a
/// step failure aborts with the partial series and the last good record
/// attached.
inline RunResult run_transient(const SchemeConfig& cfg, const ScenarioConfig& scenario) {
  cfg.validate();
  const Grid1D grid = scenario.grid();
  const FluidParams& p = scenario.params;
  const DecayMetricParams& dp = scenario.decay;
  const MmsSolution mms = make_mms(grid, p);
  const MmsSolution* mms_ptr = cfg.mms_enabled ? &mms : nullptr;

  RunResult res;
  FluidState state = build_initial_data(scenario.profile, grid, p);
  if (cfg.mms_enabled) {
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
      state.rho[i] = mms.rho(grid.center(i), 0.0);
      state.u[i] = mms.u(grid.center(i), 0.0);
    }
  }

  // event times: sample multiples of output_every, snapshot times, t_end
  std::vector<double> events;
  for (std::size_t k = 1; k * cfg.output_every < cfg.t_end * (1.0 - 1e-12); ++k)
    events.push_back(static_cast<double>(k) * cfg.output_every);
  for (double ts : scenario.snapshot_times)
    if (ts > 0.0 && ts < cfg.t_end) events.push_back(ts);
  events.push_back(cfg.t_end);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  auto wants_snapshot = [&](double t) {
    for (double ts : scenario.snapshot_times)
      if (ts == t || std::abs(ts - t) <= 1e-12 * std::max(1.0, std::abs(t))) return true;
    return false;
  };

  FluidState prev_sample = state;
  res.records.push_back(
      record_functionals(state, p, grid, dp, nullptr, cfg.rho_floor_eval,
                         &res.floored_evaluations));
  if (wants_snapshot(0.0)) res.snapshots.emplace_back(0.0, state);

  for (double target : events) {
    while (state.t < target) {
      double dt = cfl_dt(state, p, grid, cfg);
      if (state.t + dt >= target) dt = target - state.t;
      if (dt <= 0.0) break;
      try {
        state = step(state, p, grid, cfg, dt, mms_ptr);
      } catch (const std::exception& e) {
        res.error = e.what();
        res.final_state = state;
        return res;
      }
      ++res.steps;
      if (p.regime() == Regime::case_one &&
          *std::min_element(state.rho.begin(), state.rho.end()) < cfg.rho_floor_eval)
        res.case1_floor_breach = true;
    }
    state.t = target;  // pin against roundoff drift
    const bool is_sample =
        std::abs(target / cfg.output_every - std::round(target / cfg.output_every)) <
            1e-9 ||
        target == cfg.t_end;
    if (is_sample) {
      res.records.push_back(record_functionals(state, p, grid, dp, &prev_sample,
                                               cfg.rho_floor_eval,
                                               &res.floored_evaluations));
      prev_sample = state;
    }
    if (wants_snapshot(target)) res.snapshots.emplace_back(target, state);
  }
  res.final_state = std::move(state);
  return res;
}

inline RunResult run_transient(const ScenarioConfig& scenario) {
  return run_transient(scenario.scheme, scenario);
}

}  // namespace ns1d
