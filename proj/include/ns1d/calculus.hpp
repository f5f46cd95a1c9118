#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ns1d/core.hpp"

namespace ns1d {

inline constexpr double kDefaultEvalFloor = 1e-12;

/// Second-order central differences in the interior, first-order one-sided
/// at the two boundary cells.
inline Field central_gradient(const Field& f, const Grid1D& grid) {
  const std::size_t n = grid.n_cells;
  if (f.size() != n)
    throw std::invalid_argument("central_gradient: field length does not match grid");
  if (n < 3) throw std::invalid_argument("central_gradient: need at least 3 cells");
  Field g(n);
  g[0] = (f[1] - f[0]) / grid.dx;
  g[n - 1] = (f[n - 1] - f[n - 2]) / grid.dx;
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) * inv2dx;
  return g;
}

/// central_gradient of the pointwise power rho^beta. Cells below `floor` use
/// the floored density when beta < 1; substitutions are counted, never
/// silent. beta == 0 is the log-branch sentinel: gradient of log(rho).
inline Field power_gradient(const Field& rho, double beta, const Grid1D& grid,
                            double floor = kDefaultEvalFloor,
                            std::size_t* floored = nullptr) {
  Field q(rho.size());
  const bool log_branch = (beta == 0.0);
  const bool needs_floor = log_branch || beta < 1.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double base = rho[i];
    if (needs_floor && base < floor) {
      base = floor;
      if (floored) ++*floored;
    }
    q[i] = log_branch ? std::log(base) : pow_of(base, beta);
  }
  return central_gradient(q, grid);
}

/// Midpoint-rule integral dx * sum(f_i); exact for linears on the
/// cell-centered grid. The name is kept for the record format.
inline double trapezoid_integral(const Field& f, const Grid1D& grid) {
  double s = 0.0;
  for (double v : f) s += v;
  return grid.dx * s;
}

/// Row-wise storage: lower[0] and upper[n-1] are structurally zero.
struct TridiagonalSystem {
  Field lower;
  Field diag;
  Field upper;
  Field rhs;
};

/// Thomas elimination. Requires weak diagonal dominance on every row and
/// strict dominance in the first and last row, which the viscous assembly
/// guarantees with margin rho_i >= floor.
inline Field solve_tridiagonal(const TridiagonalSystem& sys) {
  const std::size_t n = sys.diag.size();
  if (sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: inconsistent row lengths");
  if (n == 0) return {};

  for (std::size_t i = 0; i < n; ++i) {
    const double off = std::abs(sys.lower[i]) + std::abs(sys.upper[i]);
    const bool end_row = (i == 0 || i + 1 == n);
    const double d = std::abs(sys.diag[i]);
    if (d < off || (end_row && d <= off))
      throw numerical_error("solve_tridiagonal: row " + std::to_string(i) +
                            " is not diagonally dominant");
  }

  Field c(n), d(n);
  c[0] = sys.upper[0] / sys.diag[0];
  d[0] = sys.rhs[0] / sys.diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = sys.diag[i] - sys.lower[i] * c[i - 1];
    if (denom == 0.0)
      throw numerical_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    c[i] = sys.upper[i] / denom;
    d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / denom;
  }
  Field x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace ns1d
