#pragma once

#include <span>
#include <stdexcept>

#include "kinfluid/fluid.hpp"
#include "kinfluid/kinetic.hpp"
#include "kinfluid/spectral.hpp"
#include "kinfluid/state.hpp"

namespace kinfluid {

/// Thrown when the step-growth detector trips or a stage turns non-finite.
struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full coupled state at one instant.
struct SystemState {
  FluidState fluid;
  ParticleEnsemble particles;
  double time = 0.0;

  const GridSpec& grid() const { return fluid.grid(); }
};

/// Fluid momentum source -sum_p w_p (u(x_p) - v_p), deposited with the same
/// cloud-in-cell kernel used for interpolation, divided by cell volume. The
/// cell sum times cell volume equals minus the particle drag total to
/// round-off, which is what makes the exchange momentum-neutral.
VectorField drag_exchange_field(const ParticleEnsemble& particles, const VectorField& u_field,
                                const GridSpec& grid);

/// Span-level variant; an empty ensemble yields the zero field.
VectorField drag_exchange_field(const GridSpec& grid, const VectorField& u_field,
                                std::span<const Vec> positions, std::span<const Vec> velocities,
                                std::span<const double> weights);

/// One RK2 (midpoint) step of the joint right-hand side. Both subsystems see
/// identical stage values of u and v, so the per-stage momentum exchange is
/// exactly antisymmetric and total momentum is conserved to round-off.
SystemState coupled_step(const SystemState& state, const ModelParams& params,
                         const SpectralWorkspace& workspace, double dt);

}  // namespace kinfluid
