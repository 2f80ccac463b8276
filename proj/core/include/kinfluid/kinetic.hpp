#pragma once

#include <optional>

#include "kinfluid/params.hpp"
#include "kinfluid/spectral.hpp"
#include "kinfluid/state.hpp"
#include "kinfluid/transfer.hpp"

namespace kinfluid {

/// Grid data needed to evaluate collision forces at particle positions;
/// rebuilt from the current ensemble at every right-hand-side evaluation.
struct CollisionContext {
  CollisionType type = CollisionType::None;
  std::optional<KineticMoments> moments;        // local alignment
  std::optional<ScalarField> psi_conv_rho_f;    // nonlocal alignment
  std::optional<VectorField> psi_conv_j_f;
};

/// psi sampled on the displacement lattice m h (cell-center differences land
/// exactly on this lattice).
ScalarField sample_kernel(const AlignmentKernel& kernel, const GridSpec& grid);

CollisionContext build_collision_context(const ParticleEnsemble& particles, const GridSpec& grid,
                                         const ModelParams& params,
                                         const SpectralWorkspace* workspace);

/// Characteristic drag: dv/dt = u(x) - v.
inline Vec drag_acceleration(const Vec& v, const Vec& u_at_x) { return u_at_x - v; }

/// Q1: relaxation toward the local particle bulk velocity u_f.
Vec local_alignment_force(const Vec& x, const Vec& v, const CollisionContext& ctx);

/// Q2: (psi * j_f)(x) - (psi * rho_f)(x) v, the kernel-weighted alignment force.
Vec nonlocal_alignment_force(const Vec& x, const Vec& v, const CollisionContext& ctx);

/// Dispatch on the configured operator; zero for CollisionType::None.
Vec collision_force(const Vec& x, const Vec& v, const CollisionContext& ctx);

/// One explicit RK2 (midpoint) step of dx/dt = v, dv/dt = (u - v) + Q-force
/// against a frozen fluid velocity field. Positions wrap; weights are
/// carried over bit-identically.
ParticleEnsemble push_particles(const ParticleEnsemble& particles, const VectorField& u_field,
                                const ModelParams& params, double dt,
                                const SpectralWorkspace* workspace = nullptr);

}  // namespace kinfluid
