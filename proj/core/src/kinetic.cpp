#include "kinfluid/kinetic.hpp"

#include <stdexcept>

#include "kinfluid/parallel.hpp"

namespace kinfluid {

ScalarField sample_kernel(const AlignmentKernel& kernel, const GridSpec& grid) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const auto idx = grid.unravel(i);
    Vec x;
    for (int a = 0; a < grid.dim(); ++a) x[a] = idx[a] * grid.h();
    out[i] = kernel(x, grid.dim());
  }
  return out;
}

CollisionContext build_collision_context(const ParticleEnsemble& particles, const GridSpec& grid,
                                         const ModelParams& params,
                                         const SpectralWorkspace* workspace) {
  CollisionContext ctx;
  ctx.type = params.collision;
  if (params.collision == CollisionType::None) return ctx;

  KineticMoments moments = deposit_moments(particles, grid, params.rho_f_floor);
  if (params.collision == CollisionType::LocalAlignment) {
    ctx.moments = std::move(moments);
    return ctx;
  }

  if (workspace == nullptr)
    throw std::invalid_argument("build_collision_context: nonlocal alignment needs a workspace");
  const ScalarField psi = sample_kernel(params.kernel, grid);
  ctx.psi_conv_rho_f = workspace->convolve(psi, moments.rho_f);
  VectorField conv_j(grid);
  for (int a = 0; a < grid.dim(); ++a) conv_j.comp(a) = workspace->convolve(psi, moments.j_f.comp(a));
  ctx.psi_conv_j_f = std::move(conv_j);
  return ctx;
}

Vec local_alignment_force(const Vec& x, const Vec& v, const CollisionContext& ctx) {
  return interpolate_field(ctx.moments->u_f, x) - v;
}

Vec nonlocal_alignment_force(const Vec& x, const Vec& v, const CollisionContext& ctx) {
  const Vec conv_j = interpolate_field(*ctx.psi_conv_j_f, x);
  const double conv_rho = interpolate_field(*ctx.psi_conv_rho_f, x);
  return conv_j - conv_rho * v;
}

Vec collision_force(const Vec& x, const Vec& v, const CollisionContext& ctx) {
  switch (ctx.type) {
    case CollisionType::None: return Vec{};
    case CollisionType::LocalAlignment: return local_alignment_force(x, v, ctx);
    case CollisionType::NonlocalAlignment: return nonlocal_alignment_force(x, v, ctx);
  }
  return Vec{};
}

ParticleEnsemble push_particles(const ParticleEnsemble& particles, const VectorField& u_field,
                                const ModelParams& params, double dt,
                                const SpectralWorkspace* workspace) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("push_particles: dt must be positive and finite");
  const GridSpec& grid = u_field.grid();
  const std::size_t count = particles.size();
  const auto& xs = particles.positions();
  const auto& vs = particles.velocities();

  const CollisionContext ctx1 = build_collision_context(particles, grid, params, workspace);
  std::vector<Vec> x_mid(count), v_mid(count);
  parallel_for(count, [&](std::size_t p) {
    const Vec accel = drag_acceleration(vs[p], interpolate_field(u_field, xs[p])) +
                      collision_force(xs[p], vs[p], ctx1);
    x_mid[p] = xs[p] + 0.5 * dt * vs[p];
    v_mid[p] = vs[p] + 0.5 * dt * accel;
  });

  const ParticleEnsemble mid(particles.dim(), std::move(x_mid), std::move(v_mid),
                             particles.weights());
  const CollisionContext ctx2 = build_collision_context(mid, grid, params, workspace);
  const auto& xm = mid.positions();
  const auto& vm = mid.velocities();
  std::vector<Vec> x_new(count), v_new(count);
  parallel_for(count, [&](std::size_t p) {
    const Vec accel = drag_acceleration(vm[p], interpolate_field(u_field, xm[p])) +
                      collision_force(xm[p], vm[p], ctx2);
    x_new[p] = xs[p] + dt * vm[p];
    v_new[p] = vs[p] + dt * accel;
  });

  return ParticleEnsemble(particles.dim(), std::move(x_new), std::move(v_new),
                          particles.weights());
}

}  // namespace kinfluid
