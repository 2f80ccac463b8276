#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kinfluid/fluid.hpp"
#include "kinfluid/stencil.hpp"

using namespace kinfluid;
using namespace kinfluid::test;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

TEST_SUITE("fluid_solver") {

TEST_CASE("lame operator: constants map to zero") {
  GridSpec g(2, 8);
  VectorField u = make_vector(g, [](Vec) { return Vec{1.3, -0.7}; });
  const VectorField lu = lame_operator(u, 0.1, 0.05);
  CHECK(lu.max_norm() == 0.0);
}

TEST_CASE("lame operator: 1D single mode converges at h^2") {
  // u = sin(2 pi x) -> Lu = 4 pi^2 (2 mu + lambda) sin(2 pi x)
  const double mu = 0.3, lambda = 0.2;
  const double coeff = 4.0 * std::numbers::pi * std::numbers::pi * (2.0 * mu + lambda);
  std::vector<double> errs;
  for (int n : {16, 32, 64}) {
    GridSpec g(1, n);
    VectorField u = make_vector(g, [](Vec x) { return Vec{std::sin(two_pi * x[0])}; });
    const VectorField lu = lame_operator(u, mu, lambda);
    double err = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double exact = coeff * std::sin(two_pi * g.cell_center(i)[0]);
      err = std::max(err, std::abs(lu.comp(0)[i] - exact));
    }
    errs.push_back(err);
  }
  CHECK(errs[1] <= errs[0] / 3.4);
  CHECK(errs[2] <= errs[1] / 3.4);
}

TEST_CASE("lame operator: divergence-free 2D mode sees only the mu term") {
  // u = (sin(2 pi y), 0): div u = 0, so Lu = 4 pi^2 mu (sin(2 pi y), 0)
  GridSpec g(2, 64);
  const double mu = 0.4;
  VectorField u = make_vector(g, [](Vec x) { return Vec{std::sin(two_pi * x[1]), 0.0}; });
  const VectorField a = lame_operator(u, mu, 0.0);
  const VectorField b = lame_operator(u, mu, 10.0);  // lambda must not matter
  double err = 0.0;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double exact = 4.0 * std::numbers::pi * std::numbers::pi * mu *
                         std::sin(two_pi * g.cell_center(i)[1]);
    err = std::max(err, std::abs(a.comp(0)[i] - exact));
    CHECK(a.comp(0)[i] == b.comp(0)[i]);
    CHECK(a.comp(1)[i] == 0.0);
  }
  CHECK(err <= 4.0 * std::numbers::pi * std::numbers::pi * mu * 0.002);
}

TEST_CASE("fluid_rhs: uniform rest state is a fixed point") {
  GridSpec g(2, 8);
  ModelParams params;
  FluidState fluid = uniform_fluid(g, 1.7);
  const FluidRhs rhs = fluid_rhs(fluid, VectorField(g), params);
  CHECK(rhs.d_rho.max_abs() == 0.0);
  CHECK(rhs.d_momentum.max_norm() == 0.0);
}

TEST_CASE("fluid_rhs: uniform moving state is a fixed point") {
  GridSpec g(3, 4);
  ModelParams params;
  FluidState fluid = uniform_fluid(g, 1.0, Vec{0.4, -0.2, 0.1});
  const FluidRhs rhs = fluid_rhs(fluid, VectorField(g), params);
  CHECK(rhs.d_rho.max_abs() == 0.0);
  CHECK(rhs.d_momentum.max_norm() == 0.0);
}

TEST_CASE("fluid_rhs: pressure gradient of a 1D profile at order h^2") {
  // rho = 1 + 0.01 sin(2 pi x), u = 0, gamma = 2:
  // d_momentum = -d/dx rho^2 = -2 rho rho'
  ModelParams params;
  params.gamma = 2.0;
  std::vector<double> errs;
  for (int n : {32, 64}) {
    GridSpec g(1, n);
    ScalarField rho =
        make_scalar(g, [](Vec x) { return 1.0 + 0.01 * std::sin(two_pi * x[0]); });
    FluidState fluid(std::move(rho), VectorField(g));
    const FluidRhs rhs = fluid_rhs(fluid, VectorField(g), params);
    double err = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double x = g.cell_center(i)[0];
      const double r = 1.0 + 0.01 * std::sin(two_pi * x);
      const double exact = -2.0 * r * 0.01 * two_pi * std::cos(two_pi * x);
      err = std::max(err, std::abs(rhs.d_momentum.comp(0)[i] - exact));
    }
    errs.push_back(err);
  }
  CHECK(errs[1] <= errs[0] / 3.4);
}

TEST_CASE("fluid_rhs rejects non-finite input") {
  GridSpec g(1, 8);
  ModelParams params;
  FluidState fluid = uniform_fluid(g, 1.0);
  fluid.momentum.comp(0)[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(fluid_rhs(fluid, VectorField(g), params), std::invalid_argument);
}

TEST_CASE("discrete conservation of the flux form") {
  Rng rng(21);
  ModelParams params;
  params.gamma = 1.4;
  for (int dim : {1, 2, 3}) {
    GridSpec g(dim, 8);
    ScalarField rho = random_band_limited(g, rng, 2, 3);
    rho *= 0.05;
    for (std::size_t i = 0; i < g.cells(); ++i) rho[i] += 1.0;
    VectorField m(g);
    for (int a = 0; a < dim; ++a) {
      m.comp(a) = random_band_limited(g, rng, 2, 3);
      m.comp(a) *= 0.1;
    }
    FluidState fluid(std::move(rho), std::move(m));
    const FluidRhs rhs = fluid_rhs(fluid, VectorField(g), params);

    double scale_rho = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) scale_rho += std::abs(rhs.d_rho[i]);
    scale_rho = std::max(scale_rho * g.cell_volume(), 1e-30);
    CHECK(std::abs(rhs.d_rho.integral()) <= 1e-13 * scale_rho);

    for (int a = 0; a < dim; ++a) {
      double scale_m = 0.0;
      for (std::size_t i = 0; i < g.cells(); ++i) scale_m += std::abs(rhs.d_momentum.comp(a)[i]);
      scale_m = std::max(scale_m * g.cell_volume(), 1e-30);
      CHECK(std::abs(rhs.d_momentum.comp(a).integral()) <= 1e-12 * scale_m);
    }
  }
}

TEST_CASE("stable_timestep follows the stated limits") {
  ModelParams params;
  params.gamma = 2.0;
  params.mu = 0.01;
  params.lambda = 0.01;
  params.cfl = 0.5;
  GridSpec g(1, 32);
  FluidState fluid = uniform_fluid(g, 1.0);
  ParticleEnsemble rest(1, {Vec{0.5}}, {Vec{0.0}}, {1.0});

  const double h = g.h();
  const double advective = h / std::sqrt(2.0);
  const double viscous = h * h / (2.0 * 1.0 * 0.03);
  const double expected = 0.5 * std::min({advective, viscous, 0.5});
  CHECK(stable_timestep(fluid, rest, params) == doctest::Approx(expected).epsilon(1e-14));

  SUBCASE("linear in cfl") {
    ModelParams half = params;
    half.cfl = 0.25;
    CHECK(stable_timestep(fluid, rest, half) ==
          doctest::Approx(0.5 * expected).epsilon(1e-14));
  }
  SUBCASE("faster flow shrinks the advective branch") {
    ModelParams thin = params;
    thin.mu = 1e-4;
    thin.lambda = 0.0;  // advective branch active
    FluidState slow = uniform_fluid(g, 1.0, Vec{1.0});
    FluidState fast = uniform_fluid(g, 1.0, Vec{2.0});
    CHECK(stable_timestep(fast, rest, thin) < stable_timestep(slow, rest, thin));
  }
  SUBCASE("drag relaxation cap") {
    ModelParams loose = params;
    loose.mu = 1e-6;
    loose.lambda = 0.0;
    GridSpec coarse(1, 4);
    // huge cells, tiny viscosity: the 0.5 relaxation cap binds
    FluidState fluid_c = uniform_fluid(coarse, 1e-4);
    CHECK(stable_timestep(fluid_c, rest, loose) == doctest::Approx(0.5 * 0.5));
  }
}

}  // TEST_SUITE
