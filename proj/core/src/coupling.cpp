#include "kinfluid/coupling.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "kinfluid/parallel.hpp"

namespace kinfluid {

namespace {

/// One evaluation of the joint semi-discrete right-hand side.
struct JointDeriv {
  FluidRhs fluid;
  std::vector<Vec> d_x;
  std::vector<Vec> d_v;
};

VectorField deposit_drag(const GridSpec& grid, const ParticleEnsemble& particles,
                         std::span<const Vec> relative_velocity) {
  VectorField source(grid);
  const double inv_vol = 1.0 / grid.cell_volume();
  const auto& xs = particles.positions();
  const auto& ws = particles.weights();
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const CicStencil s = cic_stencil(grid, xs[p]);
    const Vec value = -ws[p] * inv_vol * relative_velocity[p];
    cic_for_each(grid, s, [&](std::size_t cell, double w) {
      for (int a = 0; a < grid.dim(); ++a) source.comp(a)[cell] += w * value[a];
    });
  }
  return source;
}

JointDeriv joint_rhs(const FluidState& fluid, const ParticleEnsemble& particles,
                     const ModelParams& params, const SpectralWorkspace& workspace) {
  const GridSpec& grid = fluid.grid();
  const VectorField u = derive_velocity(fluid, params);
  const CollisionContext ctx = build_collision_context(particles, grid, params, &workspace);

  const std::size_t count = particles.size();
  const auto& xs = particles.positions();
  const auto& vs = particles.velocities();
  std::vector<Vec> d_x(count), d_v(count), rel(count);
  parallel_for(count, [&](std::size_t p) {
    const Vec g = drag_acceleration(vs[p], interpolate_field(u, xs[p]));
    rel[p] = g;
    d_x[p] = vs[p];
    d_v[p] = g + collision_force(xs[p], vs[p], ctx);
  });

  // The fluid sees the exact opposite of the particle drag, per stage.
  const VectorField source = deposit_drag(grid, particles, rel);
  FluidRhs rhs = fluid_rhs(fluid, source, params);
  return JointDeriv{std::move(rhs), std::move(d_x), std::move(d_v)};
}

FluidState advance_fluid(const FluidState& base, const FluidRhs& rhs, double step) {
  const GridSpec& grid = base.grid();
  ScalarField rho = base.rho;
  VectorField m = base.momentum;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    rho[i] += step * rhs.d_rho[i];
    for (int a = 0; a < grid.dim(); ++a) m.comp(a)[i] += step * rhs.d_momentum.comp(a)[i];
  }
  return FluidState(std::move(rho), std::move(m));
}

ParticleEnsemble advance_particles(const ParticleEnsemble& base, const JointDeriv& deriv,
                                   double step) {
  const std::size_t count = base.size();
  std::vector<Vec> x(count), v(count);
  for (std::size_t p = 0; p < count; ++p) {
    x[p] = base.positions()[p] + step * deriv.d_x[p];
    v[p] = base.velocities()[p] + step * deriv.d_v[p];
  }
  return ParticleEnsemble(base.dim(), std::move(x), std::move(v), base.weights());
}

}  // namespace

VectorField drag_exchange_field(const GridSpec& grid, const VectorField& u_field,
                                std::span<const Vec> positions, std::span<const Vec> velocities,
                                std::span<const double> weights) {
  VectorField source(grid);
  const double inv_vol = 1.0 / grid.cell_volume();
  for (std::size_t p = 0; p < positions.size(); ++p) {
    const Vec g = drag_acceleration(velocities[p], interpolate_field(u_field, positions[p]));
    const CicStencil s = cic_stencil(grid, positions[p]);
    const Vec value = -weights[p] * inv_vol * g;
    cic_for_each(grid, s, [&](std::size_t cell, double w) {
      for (int a = 0; a < grid.dim(); ++a) source.comp(a)[cell] += w * value[a];
    });
  }
  return source;
}

VectorField drag_exchange_field(const ParticleEnsemble& particles, const VectorField& u_field,
                                const GridSpec& grid) {
  return drag_exchange_field(grid, u_field, particles.positions(), particles.velocities(),
                             particles.weights());
}

SystemState coupled_step(const SystemState& state, const ModelParams& params,
                         const SpectralWorkspace& workspace, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("coupled_step: dt must be positive and finite");

  const double u_max_before = derive_velocity(state.fluid, params).max_norm();
  const double v_max_before = state.particles.max_speed();
  // growth is measured against the velocity scale of the problem, so a state
  // drifting off exact rest does not trip the detector
  const double sound_speed =
      std::sqrt(params.gamma * std::pow(state.fluid.rho.max(), params.gamma - 1.0));
  const double growth_scale = std::max({u_max_before, v_max_before, sound_speed});

  try {
    const JointDeriv k1 = joint_rhs(state.fluid, state.particles, params, workspace);
    const FluidState fluid_mid = advance_fluid(state.fluid, k1.fluid, 0.5 * dt);
    const ParticleEnsemble particles_mid = advance_particles(state.particles, k1, 0.5 * dt);

    const JointDeriv k2 = joint_rhs(fluid_mid, particles_mid, params, workspace);
    FluidState fluid_new = advance_fluid(state.fluid, k2.fluid, dt);
    ParticleEnsemble particles_new = advance_particles(state.particles, k2, dt);

    if (!fluid_new.rho.all_finite() || !fluid_new.momentum.all_finite())
      throw InstabilityError("coupled_step: non-finite fluid state");

    const double u_max_after = derive_velocity(fluid_new, params).max_norm();
    const double v_max_after = particles_new.max_speed();
    if (u_max_after > 10.0 * growth_scale || v_max_after > 10.0 * growth_scale) {
      std::ostringstream msg;
      msg << "coupled_step: instability at t=" << state.time << ", max|u| " << u_max_before
          << " -> " << u_max_after << ", max|v| " << v_max_before << " -> " << v_max_after;
      throw InstabilityError(msg.str());
    }

    return SystemState{std::move(fluid_new), std::move(particles_new), state.time + dt};
  } catch (const std::invalid_argument& e) {
    // Non-finite stage values surface as construction failures.
    throw InstabilityError(std::string("coupled_step: ") + e.what());
  }
}

}  // namespace kinfluid
