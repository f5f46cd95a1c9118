#pragma once

#include <algorithm>
#include <cmath>

#include "ns1d/calculus.hpp"
#include "ns1d/core.hpp"
#include "ns1d/mms.hpp"

namespace ns1d {

/// Time-integration controls. The viscous term is implicit, so only the
/// convective CFL restricts dt.
struct SchemeConfig {
  double cfl_number = 0.45;      ///< in (0,1); positivity is proven for <= 0.5
  double dt_max = 0.1;           ///< cap when wave speeds vanish
  double rho_floor_eval = 1e-12; ///< evaluation floor for negative powers
  bool mms_enabled = false;
  double t_end = 10.0;
  double output_every = 0.5;

  void validate() const {
    if (!(cfl_number > 0.0 && cfl_number < 1.0))
      throw config_error("scheme.cfl must be in (0, 1)");
    if (!(dt_max > 0.0)) throw config_error("scheme.dt_max must be > 0");
    if (!(rho_floor_eval > 0.0)) throw config_error("scheme.rho_floor must be > 0");
    if (!(t_end > 0.0)) throw config_error("scheme.t_end must be > 0");
    if (!(output_every > 0.0)) throw config_error("scheme.output_every must be > 0");
  }
};

/// dt = min(dt_max, cfl * dx / max_i(|u_i| + sqrt(gamma rho_i^(gamma-1)))).
inline double cfl_dt(const FluidState& state, const FluidParams& p, const Grid1D& grid,
                     const SchemeConfig& cfg) {
  double speed = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double c = std::sqrt(p.gamma * pow_of(state.rho[i], p.gamma - 1.0));
    speed = std::max(speed, std::abs(state.u[i]) + c);
  }
  if (!std::isfinite(speed)) throw numerical_error("cfl_dt: non-finite wave speed");
  if (speed <= 0.0) return cfg.dt_max;
  return std::min(cfg.dt_max, cfg.cfl_number * grid.dx / speed);
}

/// One step of the three-stage splitting with u = 0 walls:
///   (a) mass: conservative first-order upwind, face velocity (u_i+u_{i+1})/2,
///       zero boundary fluxes;
///   (b) momentum predictor: explicit upwind convection of m = rho u plus the
///       central gradient of P(rho) and the MMS sources when enabled;
///   (c) viscous corrector: implicit solve of
///       rho^{n+1} u - dt d/dx(mu_eps(rho^{n+1}) du/dx) = m*,
///       with Dirichlet u = 0 rows at both walls and at vacuum cells.
/// Mass is conserved to rounding and rho stays nonnegative under the CFL
/// precondition.
inline FluidState step(const FluidState& state, const FluidParams& p, const Grid1D& grid,
                       const SchemeConfig& cfg, double dt, const MmsSolution* mms = nullptr) {
  const std::size_t n = grid.n_cells;
  if (state.rho.size() != n || state.u.size() != n)
    throw std::invalid_argument("step: state/grid mismatch");
  if (dt > cfl_dt(state, p, grid, cfg) * (1.0 + 1e-12))
    throw numerical_error("step: dt violates the CFL precondition");

  const double lam = dt / grid.dx;

  // (a) mass transport on the n-1 interior faces
  Field face_u(n - 1), mass_flux(n - 1);
  for (std::size_t f = 0; f < n - 1; ++f) {
    const double uf = 0.5 * (state.u[f] + state.u[f + 1]);
    face_u[f] = uf;
    mass_flux[f] = uf >= 0.0 ? state.rho[f] * uf : state.rho[f + 1] * uf;
  }
  FluidState out;
  out.t = state.t + dt;
  out.rho.resize(n);
  out.u.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double fl = i == 0 ? 0.0 : mass_flux[i - 1];
    const double fr = i + 1 == n ? 0.0 : mass_flux[i];
    double r = state.rho[i] - lam * (fr - fl);
    if (mms) r += dt * mms->s_rho(grid.center(i), state.t);
    out.rho[i] = r;
  }

  // (b) momentum predictor
  Field pressures(n);
  for (std::size_t i = 0; i < n; ++i) pressures[i] = pressure(state.rho[i], p.gamma);
  const Field pgrad = central_gradient(pressures, grid);
  Field m_star(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m_l = i == 0 ? 0.0
                              : (face_u[i - 1] >= 0.0
                                     ? state.rho[i - 1] * state.u[i - 1] * face_u[i - 1]
                                     : state.rho[i] * state.u[i] * face_u[i - 1]);
    const double m_r = i + 1 == n ? 0.0
                                  : (face_u[i] >= 0.0
                                         ? state.rho[i] * state.u[i] * face_u[i]
                                         : state.rho[i + 1] * state.u[i + 1] * face_u[i]);
    double m = state.rho[i] * state.u[i] - lam * (m_r - m_l) - dt * pgrad[i];
    if (mms) m += dt * mms->s_m(grid.center(i), state.t);
    m_star[i] = m;
  }

  // (c) implicit viscous solve for u^{n+1}
  Field mu(n);
  for (std::size_t i = 0; i < n; ++i)
    mu[i] = viscosity(std::max(out.rho[i], 0.0), p);
  const double eta = dt / (grid.dx * grid.dx);
  TridiagonalSystem sys;
  sys.lower.assign(n, 0.0);
  sys.diag.assign(n, 1.0);
  sys.upper.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (out.rho[i] < cfg.rho_floor_eval) continue;  // vacuum: keep the Dirichlet row
    const double mu_l = 0.5 * (mu[i - 1] + mu[i]);
    const double mu_r = 0.5 * (mu[i] + mu[i + 1]);
    sys.lower[i] = -eta * mu_l;
    sys.upper[i] = -eta * mu_r;
    sys.diag[i] = out.rho[i] + eta * (mu_l + mu_r);
    sys.rhs[i] = m_star[i];
  }
  out.u = solve_tridiagonal(sys);
  for (std::size_t i = 0; i < n; ++i)
    if (out.rho[i] < cfg.rho_floor_eval) out.u[i] = 0.0;
  return out;
}

}  // namespace ns1d
