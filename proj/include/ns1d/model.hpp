#pragma once

#include <cmath>
#include <limits>

#include "ns1d/calculus.hpp"
#include "ns1d/core.hpp"

namespace ns1d {

namespace detail {

inline double smoothstep01(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * (3.0 - 2.0 * s);
}

inline double interp_table(const std::vector<std::pair<double, double>>& table, double x) {
  if (table.empty()) throw config_error("custom_table profile requires a table");
  if (x <= table.front().first) return table.front().second;
  if (x >= table.back().first) return table.back().second;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (x <= table[i].first) {
      const auto [x0, v0] = table[i - 1];
      const auto [x1, v1] = table[i];
      const double w = (x - x0) / (x1 - x0);
      return v0 + w * (v1 - v0);
    }
  }
  return table.back().second;
}

}  // namespace detail

inline double profile_rho(const InitialProfile& prof, const FluidParams& p, double x) {
  switch (prof.kind) {
    case InitialProfile::Kind::constant:
      return p.rho_bar;
    case InitialProfile::Kind::gaussian_bump: {
      const double d = (x - prof.center) / prof.width;
      return p.rho_bar + prof.amplitude * std::exp(-d * d);
    }
    case InitialProfile::Kind::vacuum_well: {
      const double edge = std::abs(x - prof.center) - 0.5 * prof.width;
      return p.rho_bar * detail::smoothstep01(edge / prof.transition);
    }
    case InitialProfile::Kind::custom_table:
      return detail::interp_table(prof.rho_table, x);
  }
  return p.rho_bar;
}

inline double profile_u0(const InitialProfile& prof, double x) {
  switch (prof.u0_kind) {
    case InitialProfile::VelKind::zero:
      return 0.0;
    case InitialProfile::VelKind::gaussian_bump: {
      const double d = (x - prof.u0_center) / prof.u0_width;
      return prof.u0_amplitude * std::exp(-d * d);
    }
    case InitialProfile::VelKind::custom_table:
      return detail::interp_table(prof.u0_table, x);
  }
  return 0.0;
}

inline void validate_profile(const InitialProfile& prof, const FluidParams& p) {
  if (!(prof.width > 0.0)) throw config_error("profile.width must be > 0");
  if (!(prof.u0_width > 0.0)) throw config_error("profile.u0_width must be > 0");
  if (!(prof.transition > 0.0)) throw config_error("profile.transition must be > 0");
  switch (prof.kind) {
    case InitialProfile::Kind::constant:
      if (p.rho_bar == 0.0 && p.regime() == Regime::case_one)
        throw config_error("constant profile with rho_bar=0 requires alpha > 1/2");
      break;
    case InitialProfile::Kind::gaussian_bump:
      if (prof.amplitude < -p.rho_bar)
        throw config_error("profile.amplitude must be >= -rho_bar (density must stay >= 0)");
      if (prof.amplitude == -p.rho_bar && p.regime() == Regime::case_one)
        throw config_error("density touching zero requires alpha > 1/2");
      break;
    case InitialProfile::Kind::vacuum_well:
      if (p.regime() == Regime::case_one)
        throw config_error("profile.kind=vacuum_well requires alpha > 1/2");
      if (!(p.rho_bar > 0.0))
        throw config_error("profile.kind=vacuum_well requires rho_bar > 0");
      break;
    case InitialProfile::Kind::custom_table:
      if (prof.rho_table.empty())
        throw config_error("profile.rho_table is required for kind=custom_table");
      break;
  }
}

/// Density floor of the regularized data construction: C0 * eps^(1/(2a-2t)).
/// Active only when eps_reg > 0 and alpha > theta (positive exponent).
inline double initial_floor(const FluidParams& p) {
  if (p.eps_reg > 0.0 && p.alpha > p.theta)
    return p.floor_c0 * std::pow(p.eps_reg, 1.0 / (2.0 * (p.alpha - p.theta)));
  return 0.0;
}

/// Samples rho0, u0 at cell centers, applies the regularization floor, and
/// zeroes the velocity on vacuum cells (momentum is zero there).
inline FluidState build_initial_data(const InitialProfile& prof, const Grid1D& grid,
                                     const FluidParams& p) {
  validate_profile(prof, p);
  const double floor = initial_floor(p);
  FluidState s;
  s.rho.resize(grid.n_cells);
  s.u.resize(grid.n_cells);
  s.t = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double x = grid.center(i);
    double r = profile_rho(prof, p, x);
    if (r < 0.0) throw config_error("initial profile produced a negative density");
    if (r < floor) r = floor;
    s.rho[i] = r;
    s.u[i] = r < kDefaultEvalFloor ? 0.0 : profile_u0(prof, x);
  }
  return s;
}

/// Integral of [(rho^(alpha-1/2))_x]^2, or of [(log rho)_x]^2 when
/// alpha = 1/2.
inline double slope_square_integral(const Field& rho, const FluidParams& p, const Grid1D& grid,
                                    double floor = kDefaultEvalFloor,
                                    std::size_t* floored = nullptr) {
  const double beta = (p.alpha == 0.5) ? 0.0 : p.alpha - 0.5;
  Field g = power_gradient(rho, beta, grid, floor, floored);
  for (double& v : g) v *= v;
  return trapezoid_integral(g, grid);
}

/// Discrete values of the admissibility integrals of the initial data.
/// Ratios use the 0/0 := 0 convention on vacuum cells; non-finite entries
/// are reported, not thrown.
struct AdmissibilityReport {
  double psi_integral = 0.0;     ///< integral of rho0 * Psi
  double kinetic_moment = 0.0;   ///< integral of m0^2 / rho0
  double higher_moment = 0.0;    ///< integral of |m0|^(2+delta) / rho0^(1+delta)
  double slope_integral = 0.0;   ///< integral of the squared slope (or log branch)
  bool all_finite = true;
};

inline AdmissibilityReport admissibility_report(const FluidState& state, const Grid1D& grid,
                                                const FluidParams& p) {
  const std::size_t n = grid.n_cells;
  Field psi(n), mom2(n), momd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = state.rho[i];
    const double m = r * state.u[i];
    psi[i] = rho_psi(r, p);
    if (m == 0.0) {
      mom2[i] = 0.0;
      momd[i] = 0.0;
    } else {
      mom2[i] = m * m / r;
      momd[i] = std::pow(std::abs(m), 2.0 + p.delta_moment) /
                std::pow(r, 1.0 + p.delta_moment);
    }
  }
  AdmissibilityReport rep;
  rep.psi_integral = trapezoid_integral(psi, grid);
  rep.kinetic_moment = trapezoid_integral(mom2, grid);
  rep.higher_moment = trapezoid_integral(momd, grid);
  rep.slope_integral = slope_square_integral(state.rho, p, grid);
  rep.all_finite = std::isfinite(rep.psi_integral) && std::isfinite(rep.kinetic_moment) &&
                   std::isfinite(rep.higher_moment) && std::isfinite(rep.slope_integral);
  return rep;
}

}  // namespace ns1d
