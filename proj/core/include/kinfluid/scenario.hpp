#pragma once

#include "kinfluid/config.hpp"
#include "kinfluid/coupling.hpp"

namespace kinfluid {

/// Build the initial state named by config.scenario:
///   equilibrium             uniform rest fluid, lattice particles at rest
///   homogeneous_relaxation  lattice particles, uniform fields, u0 - v0 = gap
///   two_temperature         interleaved velocity lattices at mean +- a e1
///   perturbed               rho = rho_c (1 + eps sin(2 pi x1)), seeded random
///                           particle cloud with its initial energy capped
/// Construction is deterministic per seed.
SystemState init_scenario(const RunConfig& config);

/// Lattice refinement per axis used to realize roughly the requested
/// particles-per-cell for lattice scenarios (the realized count is the cube
/// of this, or twice that for the two-lattice scenario).
int lattice_multiplier(int particles_per_cell, int dimension, int groups = 1);

}  // namespace kinfluid
