#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ns1d {

using Field = std::vector<double>;

/// Scenario/validation failure; the CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure inside a numerical kernel or a time step; aborts the run.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// x^e with exact fast paths for the exponents that dominate the hot loops
/// (integer and quarter powers of the constitutive laws).
inline double pow_of(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 3.0) return x * x * x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 1.5) return x * std::sqrt(x);
  if (e == 0.25) return std::sqrt(std::sqrt(x));
  if (e == -1.0) return 1.0 / x;
  return std::pow(x, e);
}

enum class Regime { case_one, case_two };  // 0 < alpha <= 1/2  /  alpha > 1/2

/// Constitutive exponents and regularization of the barotropic system:
/// P(rho) = rho^gamma, mu_eps(rho) = rho^alpha + eps_reg * rho^theta.
struct FluidParams {
  double alpha = 1.0;         ///< viscosity exponent, > 0
  double gamma = 2.0;         ///< pressure exponent, > 1
  double rho_bar = 1.0;       ///< far-field density, >= 0
  double eps_reg = 0.0;       ///< viscosity regularization strength, >= 0
  double theta = 0.25;        ///< regularization exponent, in (0, 1/2)
  double delta_moment = 0.5;  ///< exponent of the higher moment check, in (0, 1)
  double floor_c0 = 1.0;      ///< C0 in the initial-data floor, > 0

  Regime regime() const { return alpha > 0.5 ? Regime::case_two : Regime::case_one; }

  void validate() const {
    if (!(alpha > 0.0)) throw config_error("params.alpha must be > 0");
    if (!(gamma > 1.0)) throw config_error("params.gamma must be > 1");
    if (!(rho_bar >= 0.0)) throw config_error("params.rho_bar must be >= 0");
    if (!(eps_reg >= 0.0)) throw config_error("params.eps_reg must be >= 0");
    if (!(theta > 0.0 && theta < 0.5)) throw config_error("params.theta must be in (0, 1/2)");
    if (!(delta_moment > 0.0 && delta_moment < 1.0))
      throw config_error("params.delta_moment must be in (0, 1)");
    if (!(floor_c0 > 0.0)) throw config_error("params.floor_c0 must be > 0");
  }
};

/// Uniform cell-centered mesh on the truncated domain [-M, M].
struct Grid1D {
  double half_width = 1.0;
  std::size_t n_cells = 8;
  double dx = 0.25;

  static Grid1D make(double half_width, std::size_t n_cells) {
    if (!(half_width > 0.0)) throw config_error("grid.M must be > 0");
    if (n_cells < 8) throw config_error("grid.n must be >= 8");
    Grid1D g;
    g.half_width = half_width;
    g.n_cells = n_cells;
    g.dx = 2.0 * half_width / static_cast<double>(n_cells);
    return g;
  }

  double center(std::size_t i) const {
    return -half_width + (static_cast<double>(i) + 0.5) * dx;
  }

  Field centers() const {
    Field x(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) x[i] = center(i);
    return x;
  }
};

/// Discrete density/velocity fields at one time level. Momentum m = rho*u is
/// derived, never stored; velocity is zero by convention wherever rho is.
struct FluidState {
  Field rho;
  Field u;
  double t = 0.0;
};

/// Analytic initial profile sampled at cell centers.
struct InitialProfile {
  enum class Kind { constant, gaussian_bump, vacuum_well, custom_table };
  enum class VelKind { zero, gaussian_bump, custom_table };

  Kind kind = Kind::constant;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  double transition = 1.0;  // vacuum_well edge ramp length

  VelKind u0_kind = VelKind::zero;
  double u0_amplitude = 0.0;
  double u0_center = 0.0;
  double u0_width = 1.0;

  std::vector<std::pair<double, double>> rho_table;  // (x, rho) rows for custom_table
  std::vector<std::pair<double, double>> u0_table;   // (x, u) rows for custom_table
};

/// One time-sample of every tracked functional. All entries are finite by
/// contract; balance_residual_norm is 0 when no previous sample exists.
struct FunctionalRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double bd_entropy = 0.0;
  double combined = 0.0;
  double visc_dissipation = 0.0;
  double pressure_dissipation = 0.0;
  double slope = 0.0;
  double sup_dev = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double decay_f = 0.0;
  double balance_residual_norm = 0.0;
};

/// P(rho) = rho^gamma.
inline double pressure(double rho, double gamma) {
  if (rho < 0.0) throw std::domain_error("pressure: negative density");
  return pow_of(rho, gamma);
}

/// mu_eps(rho) = rho^alpha + eps_reg * rho^theta.
inline double viscosity(double rho, const FluidParams& p) {
  if (rho < 0.0) throw std::domain_error("viscosity: negative density");
  double mu = pow_of(rho, p.alpha);
  if (p.eps_reg > 0.0) mu += p.eps_reg * pow_of(rho, p.theta);
  return mu;
}

/// rho * Psi(rho, rho_bar) in closed form, so vacuum needs no division:
///   (rho^g - rb^g - g*rb^(g-1)*(rho - rb)) / (g - 1).
/// Convex, zero only at rho = rho_bar. Rounding can leave a tiny negative
/// residue near rho_bar; clamped to 0.
inline double rho_psi(double rho, const FluidParams& p) {
  const double g = p.gamma;
  const double rb = p.rho_bar;
  const double v =
      (pow_of(rho, g) - pow_of(rb, g) - g * pow_of(rb, g - 1.0) * (rho - rb)) / (g - 1.0);
  return v < 0.0 ? 0.0 : v;
}

}  // namespace ns1d
