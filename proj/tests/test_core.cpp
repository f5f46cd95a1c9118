#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ns1d/core.hpp"
#include "ns1d/model.hpp"
#include "oracles.hpp"

using namespace ns1d;

namespace {
FluidParams params(double alpha, double gamma, double rho_bar, double eps = 0.0,
                   double theta = 0.25) {
  FluidParams p;
  p.alpha = alpha;
  p.gamma = gamma;
  p.rho_bar = rho_bar;
  p.eps_reg = eps;
  p.theta = theta;
  return p;
}
}  // namespace

TEST_CASE("pressure law") {
  CHECK(pressure(1.0, 2.0) == 1.0);
  CHECK(pressure(0.0, 1.5) == 0.0);
  CHECK(pressure(2.0, 2.0) == 4.0);
  CHECK_THROWS_AS(pressure(-0.1, 2.0), std::domain_error);
}

TEST_CASE("viscosity law") {
  CHECK(viscosity(1.0, params(0.7, 2.0, 1.0)) == 1.0);
  CHECK(viscosity(4.0, params(0.5, 2.0, 1.0)) == 2.0);
  CHECK(viscosity(1.0, params(1.0, 2.0, 1.0, 0.1, 0.25)) == Catch::Approx(1.1).epsilon(1e-14));
  CHECK_THROWS_AS(viscosity(-1.0, params(1.0, 2.0, 1.0)), std::domain_error);
}

TEST_CASE("pressure potential rho*Psi") {
  const auto p = params(1.0, 2.0, 1.0);
  CHECK(rho_psi(1.0, p) == 0.0);
  CHECK(rho_psi(2.0, p) == Catch::Approx(1.0).epsilon(1e-14));

  // oracle: rho * integral_{rho_bar}^{rho} (s^g - rho_bar^g)/s^2 ds
  const double quadrature =
      2.0 * oracle::integrate([](double s) { return (s * s - 1.0) / (s * s); }, 1.0, 2.0);
  CHECK(rho_psi(2.0, p) == Catch::Approx(quadrature).epsilon(1e-10));

  FluidParams vac = params(1.0, 2.0, 0.0);
  CHECK(rho_psi(1.0, vac) == Catch::Approx(1.0).epsilon(1e-14));  // rho^g/(g-1)
}

TEST_CASE("rho*Psi nonnegative, convex, quadratic at gamma=2") {
  const auto p = params(1.0, 2.0, 1.0);
  const double hi = 10.0 * p.rho_bar + 10.0;
  double prev2 = rho_psi(0.0, p), prev1 = rho_psi(0.001 * hi, p);
  for (int i = 0; i <= 1000; ++i) {
    const double rho = hi * i / 1000.0;
    const double v = rho_psi(rho, p);
    CHECK(v >= 0.0);
    if (std::abs(rho - p.rho_bar) > 1e-3) CHECK(v > 0.0);
    if (i >= 2) {
      const double second_diff = rho_psi(rho, p) - 2.0 * prev1 + prev2;
      CHECK(second_diff >= -1e-12);
      prev2 = prev1;
      prev1 = v;
    }
  }
  // gamma = 2: rho*Psi equals (rho - rho_bar)^2 by closed-form algebra
  for (int i = 0; i <= 4000; ++i) {
    const double rho = 4.0 * i / 4000.0;
    const double d = rho - 1.0;
    CHECK(rho_psi(rho, p) == Catch::Approx(d * d).margin(1e-14));
  }
}

TEST_CASE("constitutive monotonicity in rho") {
  const auto p = params(0.75, 1.5, 1.0, 0.01, 0.3);
  double prev_pressure = -1.0, prev_mu = -1.0;
  for (int i = 0; i <= 500; ++i) {
    const double rho = 5.0 * i / 500.0;
    CHECK(pressure(rho, p.gamma) >= prev_pressure);
    CHECK(viscosity(rho, p) >= prev_mu);
    prev_pressure = pressure(rho, p.gamma);
    prev_mu = viscosity(rho, p);
  }
}

TEST_CASE("grid construction") {
  const Grid1D g = Grid1D::make(2.0, 16);
  CHECK(g.dx == Catch::Approx(0.25));
  CHECK(g.dx * static_cast<double>(g.n_cells) == Catch::Approx(2.0 * g.half_width));
  for (std::size_t i = 0; i + 1 < g.n_cells; ++i) CHECK(g.center(i) < g.center(i + 1));
  for (std::size_t i = 0; i < g.n_cells; ++i)
    CHECK(g.center(i) == Catch::Approx(-g.center(g.n_cells - 1 - i)).margin(1e-15));
  CHECK_THROWS_AS(Grid1D::make(0.0, 16), config_error);
  CHECK_THROWS_AS(Grid1D::make(1.0, 4), config_error);
}

TEST_CASE("params validation and regime flag") {
  CHECK(params(0.25, 2.0, 1.0).regime() == Regime::case_one);
  CHECK(params(0.5, 2.0, 1.0).regime() == Regime::case_one);
  CHECK(params(0.51, 2.0, 1.0).regime() == Regime::case_two);
  CHECK_THROWS_AS(params(0.0, 2.0, 1.0).validate(), config_error);
  CHECK_THROWS_AS(params(1.0, 1.0, 1.0).validate(), config_error);
  CHECK_THROWS_AS(params(1.0, 2.0, -1.0).validate(), config_error);
  FluidParams bad_theta = params(1.0, 2.0, 1.0);
  bad_theta.theta = 0.5;
  CHECK_THROWS_AS(bad_theta.validate(), config_error);
}

TEST_CASE("initial data: constant and gaussian profiles") {
  const auto p = params(1.0, 2.0, 1.0);
  const Grid1D g = Grid1D::make(10.0, 128);

  InitialProfile constant;
  const FluidState s0 = build_initial_data(constant, g, p);
  CHECK(s0.t == 0.0);
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    CHECK(s0.rho[i] == 1.0);
    CHECK(s0.u[i] == 0.0);
  }

  InitialProfile bump;
  bump.kind = InitialProfile::Kind::gaussian_bump;
  bump.amplitude = 0.5;
  const Grid1D gf = Grid1D::make(10.0, 1024);
  const FluidState s1 = build_initial_data(bump, gf, p);
  double mx = 0.0, mn = 1e300;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    if (s1.rho[i] > mx) {
      mx = s1.rho[i];
      argmax = i;
    }
    mn = std::min(mn, s1.rho[i]);
  }
  CHECK(mx == Catch::Approx(1.5).margin(1e-3));
  CHECK(std::abs(g.center(argmax)) < g.dx);
  CHECK(mn == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("initial data: regularization floor") {
  auto p = params(1.0, 2.0, 1.0, 1e-4, 0.25);
  // exponent 1/(2 alpha - 2 theta) = 1/1.5
  const double expected = std::pow(1e-4, 1.0 / 1.5);
  CHECK(initial_floor(p) == Catch::Approx(2.154434690031884e-3).epsilon(1e-9));
  CHECK(initial_floor(p) == Catch::Approx(expected).epsilon(1e-14));

  const Grid1D g = Grid1D::make(10.0, 64);
  InitialProfile well;
  well.kind = InitialProfile::Kind::vacuum_well;
  well.width = 2.0;
  const FluidState s = build_initial_data(well, g, p);
  double mn = 1e300;
  for (double r : s.rho) mn = std::min(mn, r);
  CHECK(mn >= expected);
  CHECK(mn == Catch::Approx(expected).epsilon(1e-12));

  p.eps_reg = 0.0;
  const FluidState s2 = build_initial_data(well, g, p);
  mn = 1e300;
  for (double r : s2.rho) mn = std::min(mn, r);
  CHECK(mn == 0.0);
}

TEST_CASE("initial data: regime mismatch is a configuration error") {
  const auto p = params(0.25, 2.0, 1.0);
  const Grid1D g = Grid1D::make(10.0, 64);
  InitialProfile well;
  well.kind = InitialProfile::Kind::vacuum_well;
  well.width = 2.0;
  CHECK_THROWS_AS(build_initial_data(well, g, p), config_error);
}

TEST_CASE("admissibility report") {
  const auto p = params(1.0, 2.0, 1.0);
  const Grid1D g = Grid1D::make(20.0, 2048);

  InitialProfile constant;
  const auto rep0 = admissibility_report(build_initial_data(constant, g, p), g, p);
  CHECK(rep0.psi_integral == 0.0);
  CHECK(rep0.kinetic_moment == 0.0);
  CHECK(rep0.higher_moment == 0.0);
  CHECK(rep0.slope_integral == 0.0);
  CHECK(rep0.all_finite);

  InitialProfile bump;
  bump.kind = InitialProfile::Kind::gaussian_bump;
  bump.amplitude = 0.5;
  const auto rep1 = admissibility_report(build_initial_data(bump, g, p), g, p);
  CHECK(rep1.kinetic_moment == 0.0);  // m0 = 0
  CHECK(rep1.higher_moment == 0.0);
  CHECK(rep1.psi_integral > 0.0);

  // gamma = 2: rho0*Psi = (rho0 - 1)^2 analytically; adaptive quadrature oracle
  const double expected = oracle::integrate(
      [](double x) {
        const double d = 0.5 * std::exp(-x * x);
        return d * d;
      },
      -20.0, 20.0, 1e-13);
  CHECK(rep1.psi_integral == Catch::Approx(expected).epsilon(1e-6));
}

TEST_CASE("admissibility: vacuum cells use the 0/0 convention") {
  const auto p = params(1.0, 2.0, 1.0);
  const Grid1D g = Grid1D::make(10.0, 64);
  InitialProfile well;
  well.kind = InitialProfile::Kind::vacuum_well;
  well.width = 2.0;
  FluidState s = build_initial_data(well, g, p);
  const auto rep = admissibility_report(s, g, p);
  CHECK(rep.kinetic_moment == 0.0);
  CHECK(rep.all_finite);
}
