#pragma once

#include "kinfluid/field.hpp"
#include "kinfluid/params.hpp"
#include "kinfluid/state.hpp"

namespace kinfluid {

/// Semi-discrete right-hand side of the fluid subsystem. The flux-divergence
/// parts telescope on the torus, so the cell sum of d_rho vanishes to
/// round-off for any state.
struct FluidRhs {
  ScalarField d_rho;
  VectorField d_momentum;
};

/// Lu = -mu Laplacian(u) - (mu + lambda) grad(div u), centered differences.
VectorField lame_operator(const VectorField& u, double mu, double lambda);

/// d_rho = -div m, d_m = -div(m x u) - grad(rho^gamma) - Lu + drag_force,
/// all conservative centered stencils with periodic wrap.
FluidRhs fluid_rhs(const FluidState& fluid, const VectorField& drag_force,
                   const ModelParams& params);

/// dt = cfl * min(advective, viscous, drag relaxation) limit:
///   h / (max speed + max sqrt(gamma rho^(gamma-1))),
///   h^2 min(rho) / (2 N (2 mu + lambda)),
///   0.5  (the drag rate in the model is exactly 1).
/// The advective speed scans both fluid cells and particle velocities.
double stable_timestep(const FluidState& fluid, const ParticleEnsemble& particles,
                       const ModelParams& params);

}  // namespace kinfluid
