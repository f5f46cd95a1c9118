#pragma once

#include <algorithm>
#include <cmath>

#include "ns1d/calculus.hpp"
#include "ns1d/core.hpp"
#include "ns1d/mms.hpp"
#include "ns1d/model.hpp"

namespace ns1d {

/// Exponents of the decay metric f(t) = integral of |rho^s - rho_bar^s|^(4+2l).
struct DecayMetricParams {
  double s = 2.5;
  double l = 1.0;

  static double b(const FluidParams& p) { return 0.5 * (p.alpha + p.gamma - 1.0); }

  static DecayMetricParams defaults_for(const FluidParams& p) {
    DecayMetricParams dp;
    dp.l = 1.0;
    dp.s = p.rho_bar > 0.0 ? b(p) + 1.5 : b(p) + 0.5 * p.gamma + 1.0;
    return dp;
  }

  void validate(const FluidParams& p) const {
    if (!(l >= 1.0)) throw config_error("decay.l must be >= 1");
    if (p.rho_bar > 0.0) {
      if (!(s > b(p) + 1.0))
        throw config_error("decay.s must be > (alpha+gamma-1)/2 + 1 when rho_bar > 0");
    } else if (!(s > b(p) + 0.5 * p.gamma)) {
      throw config_error("decay.s must be > (alpha+gamma-1)/2 + gamma/2 when rho_bar = 0");
    }
  }
};

/// w = u + rho^(alpha-2) rho_x. This form of the transformed velocity is
/// regular at alpha = 1; cells below `floor` use the floored density.
inline Field effective_velocity(const FluidState& state, const FluidParams& p,
                                const Grid1D& grid, double floor = kDefaultEvalFloor,
                                std::size_t* floored = nullptr) {
  const Field rx = central_gradient(state.rho, grid);
  Field w(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    double base = state.rho[i];
    if (base < floor) {
      base = floor;
      if (floored) ++*floored;
    }
    w[i] = state.u[i] + pow_of(base, p.alpha - 2.0) * rx[i];
  }
  return w;
}

/// E = integral of rho u^2 / 2 + rho Psi.
inline double energy_functional(const FluidState& state, const FluidParams& p,
                                const Grid1D& grid) {
  Field e(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    e[i] = 0.5 * state.rho[i] * state.u[i] * state.u[i] + rho_psi(state.rho[i], p);
  return trapezoid_integral(e, grid);
}

/// F = integral of rho w^2 / 2 + rho Psi.
inline double bd_entropy_functional(const FluidState& state, const FluidParams& p,
                                    const Grid1D& grid, double floor = kDefaultEvalFloor,
                                    std::size_t* floored = nullptr) {
  const Field w = effective_velocity(state, p, grid, floor, floored);
  Field e(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    e[i] = 0.5 * state.rho[i] * w[i] * w[i] + rho_psi(state.rho[i], p);
  return trapezoid_integral(e, grid);
}

/// G = integral of alpha rho w^2 / 2 + rho u^2 / 2 + (alpha+1) rho Psi; its
/// time behavior carries the uniform-in-time bound claim.
inline double combined_functional(const FluidState& state, const FluidParams& p,
                                  const Grid1D& grid, double floor = kDefaultEvalFloor,
                                  std::size_t* floored = nullptr) {
  const Field w = effective_velocity(state, p, grid, floor, floored);
  Field e(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    e[i] = 0.5 * p.alpha * state.rho[i] * w[i] * w[i] +
           0.5 * state.rho[i] * state.u[i] * state.u[i] +
           (p.alpha + 1.0) * rho_psi(state.rho[i], p);
  return trapezoid_integral(e, grid);
}

/// Integral of mu_eps(rho) (u_x)^2.
inline double viscous_dissipation(const FluidState& state, const FluidParams& p,
                                  const Grid1D& grid) {
  const Field ux = central_gradient(state.u, grid);
  Field e(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    e[i] = viscosity(state.rho[i], p) * ux[i] * ux[i];
  return trapezoid_integral(e, grid);
}

inline double pressure_dissipation_coefficient(const FluidParams& p) {
  const double d = p.gamma + p.alpha - 1.0;
  return 4.0 * p.gamma / (d * d);
}

/// 4 gamma / (gamma+alpha-1)^2 times the integral of [(rho^((alpha+gamma-1)/2))_x]^2.
inline double pressure_dissipation(const FluidState& state, const FluidParams& p,
                                   const Grid1D& grid, double floor = kDefaultEvalFloor,
                                   std::size_t* floored = nullptr) {
  const double b = DecayMetricParams::b(p);
  Field g = power_gradient(state.rho, b, grid, floor, floored);
  for (double& v : g) v *= v;
  return pressure_dissipation_coefficient(p) * trapezoid_integral(g, grid);
}

/// Unnormalized integral of [(rho^(alpha-1/2))_x]^2; log branch at alpha=1/2.
/// The bookkeeping constant (alpha-1/2)^(-2) is record metadata, not part of
/// the value.
inline double slope_functional(const FluidState& state, const FluidParams& p,
                               const Grid1D& grid, double floor = kDefaultEvalFloor,
                               std::size_t* floored = nullptr) {
  return slope_square_integral(state.rho, p, grid, floor, floored);
}

/// f = integral of |rho^s - rho_bar^s|^(4+2l). The absolute value keeps the
/// integrand nonnegative for non-integer l.
inline double decay_metric(const FluidState& state, const FluidParams& p, const Grid1D& grid,
                           const DecayMetricParams& dp) {
  const double rbs = pow_of(p.rho_bar, dp.s);
  const double e = 4.0 + 2.0 * dp.l;
  Field f(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    f[i] = std::pow(std::abs(pow_of(state.rho[i], dp.s) - rbs), e);
  return trapezoid_integral(f, grid);
}

/// H1 = rho u^3/2 + u (rho Psi) + u (P - P(rho_bar)) - mu_eps(rho) u u_x.
inline Field flux_H1(const FluidState& state, const FluidParams& p, const Grid1D& grid) {
  const Field ux = central_gradient(state.u, grid);
  const double p_bar = pressure(p.rho_bar, p.gamma);
  Field h(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double r = state.rho[i];
    const double v = state.u[i];
    h[i] = 0.5 * r * v * v * v + v * rho_psi(r, p) + v * (pressure(r, p.gamma) - p_bar) -
           viscosity(r, p) * v * ux[i];
  }
  return h;
}

/// H2 = rho u w^2 / 2 + u (rho Psi) + u (P - P(rho_bar)).
inline Field flux_H2(const FluidState& state, const FluidParams& p, const Grid1D& grid,
                     double floor = kDefaultEvalFloor, std::size_t* floored = nullptr) {
  const Field w = effective_velocity(state, p, grid, floor, floored);
  const double p_bar = pressure(p.rho_bar, p.gamma);
  Field h(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double r = state.rho[i];
    const double v = state.u[i];
    h[i] = 0.5 * r * v * w[i] * w[i] + v * rho_psi(r, p) + v * (pressure(r, p.gamma) - p_bar);
  }
  return h;
}

/// Lambda = mu_eps(rho) u_x, the weak-solution diffusion flux.
inline Field diffusion_flux_field(const FluidState& state, const FluidParams& p,
                                  const Grid1D& grid) {
  const Field ux = central_gradient(state.u, grid);
  Field lam(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i)
    lam[i] = viscosity(state.rho[i], p) * ux[i];
  return lam;
}

/// Lagrangian mass coordinate at the n+1 cell faces: xi = integral of rho
/// from -M to x. The rightmost value is bit-identical to trapezoid_integral.
inline Field lagrangian_coordinate(const FluidState& state, const Grid1D& grid) {
  Field xi(grid.n_cells + 1);
  xi[0] = 0.0;
  double partial = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    partial += state.rho[i];
    xi[i + 1] = grid.dx * partial;
  }
  return xi;
}

namespace detail {

/// Q'(rho) where Q = rho Psi: gamma (rho^(g-1) - rho_bar^(g-1)) / (g-1).
inline double potential_derivative(double rho, const FluidParams& p) {
  return p.gamma * (pow_of(rho, p.gamma - 1.0) - pow_of(p.rho_bar, p.gamma - 1.0)) /
         (p.gamma - 1.0);
}

/// Density of the combined functional G at one cell.
inline double combined_density(double rho, double u, double w, const FluidParams& p) {
  return 0.5 * p.alpha * rho * w * w + 0.5 * rho * u * u + (p.alpha + 1.0) * rho_psi(rho, p);
}

}  // namespace detail

/// Discrete L1 residual of the combined balance law
///   d/dt[a rho w^2/2 + rho u^2/2 + (a+1) rho Psi] + d/dx[a H2 + H1]
///     + mu_eps (u_x)^2 + a * 4g/(g+a-1)^2 [(rho^((a+g-1)/2))_x]^2 = 0,
/// with forward time differences and central space differences on the
/// averaged midpoint state. When `mms` is given, the analytic source image
/// of the manufactured solution is subtracted so the norm measures pure
/// discretization error.
inline double entropy_balance_residual(const FluidState& prev, const FluidState& next,
                                       const FluidParams& p, const Grid1D& grid,
                                       const MmsSolution* mms = nullptr,
                                       double floor = kDefaultEvalFloor,
                                       std::size_t* floored = nullptr) {
  const std::size_t n = grid.n_cells;
  if (prev.rho.size() != n || next.rho.size() != n)
    throw std::invalid_argument("entropy_balance_residual: state/grid mismatch");
  if (!(next.t > prev.t))
    throw std::invalid_argument("entropy_balance_residual: next.t must exceed prev.t");
  const double dt = next.t - prev.t;

  FluidState mid;
  mid.t = 0.5 * (prev.t + next.t);
  mid.rho.resize(n);
  mid.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid.rho[i] = 0.5 * (prev.rho[i] + next.rho[i]);
    mid.u[i] = 0.5 * (prev.u[i] + next.u[i]);
  }

  const Field w_prev = effective_velocity(prev, p, grid, floor, floored);
  const Field w_next = effective_velocity(next, p, grid, floor, floored);
  const Field w_mid = effective_velocity(mid, p, grid, floor, floored);

  const Field h1 = flux_H1(mid, p, grid);
  const Field h2 = flux_H2(mid, p, grid, floor, floored);
  Field total_flux(n);
  for (std::size_t i = 0; i < n; ++i) total_flux[i] = p.alpha * h2[i] + h1[i];
  const Field dflux = central_gradient(total_flux, grid);

  const Field ux = central_gradient(mid.u, grid);
  const Field pg = power_gradient(mid.rho, DecayMetricParams::b(p), grid, floor, floored);
  const double cp = pressure_dissipation_coefficient(p);

  Field source(n, 0.0);
  if (mms) {
    Field h(n);  // phi'(rho) * s_rho, for the w rho (phi' s_rho)_x term
    for (std::size_t i = 0; i < n; ++i) {
      const double base = std::max(mid.rho[i], floor);
      h[i] = pow_of(base, p.alpha - 2.0) * mms->s_rho(grid.center(i), mid.t);
    }
    const Field hx = central_gradient(h, grid);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.center(i);
      const double sr = mms->s_rho(x, mid.t);
      const double sm = mms->s_m(x, mid.t);
      const double u = mid.u[i];
      const double w = w_mid[i];
      const double qp = detail::potential_derivative(mid.rho[i], p);
      const double r_energy = u * sm + (qp - 0.5 * u * u) * sr;
      const double r_bd = w * sm + (0.5 * w * w - u * w + qp) * sr + w * mid.rho[i] * hx[i];
      source[i] = p.alpha * r_bd + r_energy;
    }
  }

  double l1 = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double g_prev = detail::combined_density(prev.rho[i], prev.u[i], w_prev[i], p);
    const double g_next = detail::combined_density(next.rho[i], next.u[i], w_next[i], p);
    const double diss = viscosity(mid.rho[i], p) * ux[i] * ux[i] +
                        p.alpha * cp * pg[i] * pg[i];
    l1 += std::abs((g_next - g_prev) / dt + dflux[i] + diss - source[i]);
  }
  return grid.dx * l1;
}

/// Aggregates every tracked functional for one output step.
inline FunctionalRecord record_functionals(const FluidState& state, const FluidParams& p,
                                           const Grid1D& grid, const DecayMetricParams& dp,
                                           const FluidState* prev = nullptr,
                                           double floor = kDefaultEvalFloor,
                                           std::size_t* floored = nullptr) {
  FunctionalRecord rec;
  rec.t = state.t;
  rec.mass = trapezoid_integral(state.rho, grid);
  rec.energy = energy_functional(state, p, grid);
  rec.bd_entropy = bd_entropy_functional(state, p, grid, floor, floored);
  rec.combined = combined_functional(state, p, grid, floor, floored);
  rec.visc_dissipation = viscous_dissipation(state, p, grid);
  rec.pressure_dissipation = pressure_dissipation(state, p, grid, floor, floored);
  rec.slope = slope_functional(state, p, grid, floor, floored);
  double sup = 0.0, lo = state.rho[0], hi = state.rho[0];
  for (double r : state.rho) {
    sup = std::max(sup, std::abs(r - p.rho_bar));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  rec.sup_dev = sup;
  rec.min_rho = lo;
  rec.max_rho = hi;
  rec.decay_f = decay_metric(state, p, grid, dp);
  rec.balance_residual_norm =
      prev ? entropy_balance_residual(*prev, state, p, grid, nullptr, floor, floored) : 0.0;
  return rec;
}

}  // namespace ns1d
