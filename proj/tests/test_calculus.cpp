#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ns1d/calculus.hpp"
#include "oracles.hpp"

using namespace ns1d;

TEST_CASE("central gradient: constants, linears, quadratics") {
  const Grid1D g = Grid1D::make(1.0, 40);

  Field constant(g.n_cells, 3.5);
  for (double v : central_gradient(constant, g)) CHECK(v == 0.0);

  Field linear(g.n_cells);
  for (std::size_t i = 0; i < g.n_cells; ++i) linear[i] = g.center(i);
  const Field gl = central_gradient(linear, g);
  for (std::size_t i = 0; i < g.n_cells; ++i)
    CHECK(gl[i] == Catch::Approx(1.0).margin(1e-12));

  // central difference is exact for quadratics in the interior
  const Grid1D g2 = Grid1D::make(2.0, 40);  // dx = 0.1
  Field quad(g2.n_cells);
  for (std::size_t i = 0; i < g2.n_cells; ++i) quad[i] = g2.center(i) * g2.center(i);
  const Field gq = central_gradient(quad, g2);
  for (std::size_t i = 1; i + 1 < g2.n_cells; ++i)
    CHECK(gq[i] == Catch::Approx(2.0 * g2.center(i)).margin(1e-12));

  CHECK_THROWS_AS(central_gradient(Field(3, 0.0), g), std::invalid_argument);
}

TEST_CASE("central gradient is linear") {
  const Grid1D g = Grid1D::make(1.0, 64);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(g.n_cells), h(g.n_cells);
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    f[i] = dist(rng);
    h[i] = dist(rng);
  }
  const double a = 2.25, b = -0.75;
  Field combo(g.n_cells);
  for (std::size_t i = 0; i < g.n_cells; ++i) combo[i] = a * f[i] + b * h[i];
  const Field gc = central_gradient(combo, g);
  const Field gf = central_gradient(f, g);
  const Field gh = central_gradient(h, g);
  for (std::size_t i = 0; i < g.n_cells; ++i)
    CHECK(gc[i] == Catch::Approx(a * gf[i] + b * gh[i]).margin(1e-12));
}

TEST_CASE("power gradient") {
  const Grid1D g = Grid1D::make(1.0, 1024);
  Field rho(g.n_cells, 2.0);
  for (double v : power_gradient(rho, 3.0, g)) CHECK(v == 0.0);
  for (double v : power_gradient(rho, -1.0, g)) CHECK(v == 0.0);

  for (std::size_t i = 0; i < g.n_cells; ++i) rho[i] = std::exp(g.center(i));
  const std::size_t mid = g.n_cells / 2;

  // beta = 1 must agree with central_gradient exactly
  const Field pg1 = power_gradient(rho, 1.0, g);
  const Field cg = central_gradient(rho, g);
  for (std::size_t i = 0; i < g.n_cells; ++i) CHECK(pg1[i] == cg[i]);
  CHECK(pg1[mid] == Catch::Approx(1.0).margin(1e-5));  // d/dx e^x at x ~ 0

  // log branch: d/dx log(e^x) = 1
  const Field pg0 = power_gradient(rho, 0.0, g);
  for (std::size_t i = 1; i + 1 < g.n_cells; ++i)
    CHECK(pg0[i] == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("power gradient floors and counts") {
  const Grid1D g = Grid1D::make(1.0, 8);
  Field rho(g.n_cells, 1.0);
  rho[3] = 0.0;
  rho[4] = 0.0;
  std::size_t count = 0;
  (void)power_gradient(rho, -0.5, g, 1e-12, &count);
  CHECK(count == 2);
  count = 0;
  (void)power_gradient(rho, 2.0, g, 1e-12, &count);  // beta >= 1: no flooring
  CHECK(count == 0);
}

TEST_CASE("midpoint quadrature") {
  const Grid1D g = Grid1D::make(1.0, 17);
  CHECK(trapezoid_integral(Field(g.n_cells, 1.0), g) == Catch::Approx(2.0).margin(1e-15));

  Field odd(g.n_cells);
  for (std::size_t i = 0; i < g.n_cells; ++i) odd[i] = g.center(i);
  CHECK(trapezoid_integral(odd, g) == Catch::Approx(0.0).margin(1e-14));

  const Grid1D gg = Grid1D::make(10.0, 4096);
  Field gauss(gg.n_cells);
  for (std::size_t i = 0; i < gg.n_cells; ++i)
    gauss[i] = std::exp(-gg.center(i) * gg.center(i));
  CHECK(trapezoid_integral(gauss, gg) ==
        Catch::Approx(std::sqrt(std::numbers::pi)).margin(1e-8));
}

TEST_CASE("gradient/integral telescoping refinement") {
  // integral of the gradient over interior cells approaches the boundary
  // difference of f with first-order convergence
  auto f = [](double x) { return std::sin(x) + 0.3 * x * x; };
  double err_prev = 0.0;
  for (int level = 0; level < 4; ++level) {
    const std::size_t n = 128u << level;
    const Grid1D g = Grid1D::make(1.0, n);
    Field field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = f(g.center(i));
    const Field grad = central_gradient(field, g);
    double integral = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) integral += grad[i] * g.dx;
    const double boundary_diff = f(g.center(n - 2)) - f(g.center(1));
    const double err = std::abs(integral - boundary_diff);
    if (level > 0) CHECK(err_prev / err >= 1.8);
    err_prev = err;
  }
}

TEST_CASE("tridiagonal: identity and hand example") {
  TridiagonalSystem id;
  id.lower = {0, 0, 0};
  id.diag = {1, 1, 1};
  id.upper = {0, 0, 0};
  id.rhs = {2.5, -1.0, 7.0};
  const Field x = solve_tridiagonal(id);
  CHECK(x[0] == 2.5);
  CHECK(x[1] == -1.0);
  CHECK(x[2] == 7.0);

  TridiagonalSystem sys;
  sys.lower = {0, -1, -1};
  sys.diag = {2, 2, 2};
  sys.upper = {-1, -1, 0};
  sys.rhs = {1, 0, 1};
  const Field y = solve_tridiagonal(sys);
  CHECK(y[0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(y[1] == Catch::Approx(1.0).margin(1e-14));
  CHECK(y[2] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("tridiagonal rejects non-dominant systems with a row index") {
  TridiagonalSystem sys;
  sys.lower = {0, 3, 0};
  sys.diag = {2, 1, 2};
  sys.upper = {-1, 0.5, 0};
  sys.rhs = {1, 1, 1};
  try {
    (void)solve_tridiagonal(sys);
    FAIL("expected numerical_error");
  } catch (const numerical_error& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("tridiagonal matches the dense elimination oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(2, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = size(rng);
    TridiagonalSystem sys;
    sys.lower.assign(n, 0.0);
    sys.diag.assign(n, 0.0);
    sys.upper.assign(n, 0.0);
    sys.rhs.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) sys.lower[i] = entry(rng);
      if (i + 1 < n) sys.upper[i] = entry(rng);
      const double margin = 0.1 + std::abs(entry(rng));
      const double sign = entry(rng) >= 0.0 ? 1.0 : -1.0;
      sys.diag[i] = sign * (std::abs(sys.lower[i]) + std::abs(sys.upper[i]) + margin);
      sys.rhs[i] = 2.0 * entry(rng);
    }
    const Field x = solve_tridiagonal(sys);

    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      dense[i][i] = sys.diag[i];
      if (i > 0) dense[i][i - 1] = sys.lower[i];
      if (i + 1 < n) dense[i][i + 1] = sys.upper[i];
    }
    const auto ref = oracle::dense_solve(dense, sys.rhs);
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(x[i] - ref[i]) <= 1e-9 * std::max(1.0, scale));

    // residual guarantee
    double rhs_norm = 0.0, res_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ax = sys.diag[i] * x[i];
      if (i > 0) ax += sys.lower[i] * x[i - 1];
      if (i + 1 < n) ax += sys.upper[i] * x[i + 1];
      res_norm = std::max(res_norm, std::abs(ax - sys.rhs[i]));
      rhs_norm = std::max(rhs_norm, std::abs(sys.rhs[i]));
    }
    CHECK(res_norm <= 1e-10 * std::max(1.0, rhs_norm));
  }
}
