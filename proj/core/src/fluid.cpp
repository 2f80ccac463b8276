#include "kinfluid/fluid.hpp"

#include <cmath>
#include <stdexcept>

#include "kinfluid/stencil.hpp"
#include "kinfluid/transfer.hpp"

namespace kinfluid {

VectorField lame_operator(const VectorField& u, double mu, double lambda) {
  const GridSpec& g = u.grid();
  VectorField out(g);
  const ScalarField div_u = divergence_centered(u);
  const VectorField grad_div = gradient_centered(div_u);
  for (int a = 0; a < g.dim(); ++a) {
    const ScalarField lap = laplacian_centered(u.comp(a));
    for (std::size_t i = 0; i < g.cells(); ++i)
      out.comp(a)[i] = -mu * lap[i] - (mu + lambda) * grad_div.comp(a)[i];
  }
  return out;
}

FluidRhs fluid_rhs(const FluidState& fluid, const VectorField& drag_force,
                   const ModelParams& params) {
  const GridSpec& g = fluid.grid();
  if (!fluid.rho.all_finite() || !fluid.momentum.all_finite() || !drag_force.all_finite())
    throw std::invalid_argument("fluid_rhs: non-finite input");

  const VectorField u = derive_velocity(fluid, params);

  // continuity: d_rho = -div m
  ScalarField d_rho = divergence_centered(fluid.momentum);
  d_rho *= -1.0;

  // pressure p = rho^gamma, kept in flux form so the torus sum vanishes
  ScalarField pressure(g);
  for (std::size_t i = 0; i < g.cells(); ++i)
    pressure[i] = std::pow(fluid.rho[i], params.gamma);
  const VectorField grad_p = gradient_centered(pressure);

  const VectorField lame = lame_operator(u, params.mu, params.lambda);

  VectorField d_m(g);
  ScalarField flux(g);
  for (int a = 0; a < g.dim(); ++a) {
    // row a of div(rho u x u): sum_b d_b (m_b u_a)
    ScalarField conv(g);
    for (int b = 0; b < g.dim(); ++b) {
      for (std::size_t i = 0; i < g.cells(); ++i)
        flux[i] = fluid.momentum.comp(b)[i] * u.comp(a)[i];
      conv += diff_centered(flux, b);
    }
    for (std::size_t i = 0; i < g.cells(); ++i)
      d_m.comp(a)[i] = -conv[i] - grad_p.comp(a)[i] - lame.comp(a)[i] + drag_force.comp(a)[i];
  }
  return FluidRhs{std::move(d_rho), std::move(d_m)};
}

double stable_timestep(const FluidState& fluid, const ParticleEnsemble& particles,
                       const ModelParams& params) {
  const GridSpec& g = fluid.grid();
  const VectorField u = derive_velocity(fluid, params);

  double max_speed = std::max(u.max_norm(), particles.max_speed());
  double max_wave = 0.0;
  for (std::size_t i = 0; i < g.cells(); ++i)
    max_wave = std::max(max_wave, params.gamma * std::pow(fluid.rho[i], params.gamma - 1.0));
  max_wave = std::sqrt(max_wave);

  const double advective = g.h() / (max_speed + max_wave);
  const double viscous =
      g.h() * g.h() * fluid.rho.min() / (2.0 * g.dim() * (2.0 * params.mu + params.lambda));
  const double drag_relaxation = 0.5;

  const double dt = params.cfl * std::min({advective, viscous, drag_relaxation});
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::runtime_error("stable_timestep: non-positive or non-finite dt");
  return dt;
}

}  // namespace kinfluid
