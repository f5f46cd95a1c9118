#pragma once

#include <cmath>
#include <numbers>

#include "ns1d/core.hpp"

namespace ns1d {

/// Manufactured solution used to verify the scheme:
///   rho*(x,t) = 2 + 0.1 cos(pi x / M) e^{-t},  u*(x,t) = 0.1 sin(pi x / M) e^{-t},
/// with the source terms obtained by substituting (rho*, u*) into the system.
/// u* vanishes at x = +-M and rho* stays positive.
struct MmsSolution {
  double half_width = 1.0;
  FluidParams params;
  double amp = 0.1;
  double base = 2.0;

  double wavenumber() const { return std::numbers::pi / half_width; }

  double rho(double x, double t) const {
    return base + amp * std::cos(wavenumber() * x) * std::exp(-t);
  }
  double u(double x, double t) const {
    return amp * std::sin(wavenumber() * x) * std::exp(-t);
  }

  double rho_t(double x, double t) const {
    return -amp * std::cos(wavenumber() * x) * std::exp(-t);
  }
  double rho_x(double x, double t) const {
    const double k = wavenumber();
    return -amp * k * std::sin(k * x) * std::exp(-t);
  }
  double u_t(double x, double t) const { return -u(x, t); }
  double u_x(double x, double t) const {
    const double k = wavenumber();
    return amp * k * std::cos(k * x) * std::exp(-t);
  }
  double u_xx(double x, double t) const {
    const double k = wavenumber();
    return -amp * k * k * std::sin(k * x) * std::exp(-t);
  }

  /// Mass source rho_t + (rho u)_x.
  double s_rho(double x, double t) const {
    return rho_t(x, t) + rho_x(x, t) * u(x, t) + rho(x, t) * u_x(x, t);
  }

  /// Momentum source (rho u)_t + (rho u^2 + P)_x - (mu_eps(rho) u_x)_x.
  double s_m(double x, double t) const {
    const double r = rho(x, t);
    const double v = u(x, t);
    const double rx = rho_x(x, t);
    const double vx = u_x(x, t);
    const double mu = pow_of(r, params.alpha) + params.eps_reg * pow_of(r, params.theta);
    const double mu_prime = params.alpha * pow_of(r, params.alpha - 1.0) +
                            params.eps_reg * params.theta * pow_of(r, params.theta - 1.0);
    return rho_t(x, t) * v + r * u_t(x, t) + rx * v * v + 2.0 * r * v * vx +
           params.gamma * pow_of(r, params.gamma - 1.0) * rx -
           (mu_prime * rx * vx + mu * u_xx(x, t));
  }
};

inline MmsSolution make_mms(const Grid1D& grid, const FluidParams& p) {
  MmsSolution mms;
  mms.half_width = grid.half_width;
  mms.params = p;
  return mms;
}

}  // namespace ns1d
