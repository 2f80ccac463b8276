#include "kinfluid/transfer.hpp"

#include <stdexcept>

namespace kinfluid {

VectorField derive_velocity(const FluidState& fluid, const ModelParams& params) {
  const GridSpec& g = fluid.grid();
  VectorField u(g);
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double r = std::max(fluid.rho[i], params.rho_floor);
    for (int a = 0; a < g.dim(); ++a) u.comp(a)[i] = fluid.momentum.comp(a)[i] / r;
  }
  return u;
}

KineticMoments deposit_moments(const ParticleEnsemble& particles, const GridSpec& grid,
                               double rho_f_floor) {
  if (particles.size() == 0) throw std::invalid_argument("deposit_moments: empty ensemble");
  ScalarField rho_f(grid);
  VectorField j_f(grid);
  const double inv_vol = 1.0 / grid.cell_volume();
  const auto& xs = particles.positions();
  const auto& vs = particles.velocities();
  const auto& ws = particles.weights();
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const CicStencil s = cic_stencil(grid, xs[p]);
    const double wp = ws[p] * inv_vol;
    cic_for_each(grid, s, [&](std::size_t cell, double w) {
      rho_f[cell] += wp * w;
      for (int a = 0; a < grid.dim(); ++a) j_f.comp(a)[cell] += wp * w * vs[p][a];
    });
  }
  VectorField u_f(grid);
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const double r = std::max(rho_f[i], rho_f_floor);
    for (int a = 0; a < grid.dim(); ++a) u_f.comp(a)[i] = j_f.comp(a)[i] / r;
  }
  return KineticMoments{std::move(rho_f), std::move(j_f), std::move(u_f)};
}

double interpolate_field(const ScalarField& field, const Vec& x) {
  const GridSpec& g = field.grid();
  const CicStencil s = cic_stencil(g, x);
  double out = 0.0;
  cic_for_each(g, s, [&](std::size_t cell, double w) { out += w * field[cell]; });
  return out;
}

Vec interpolate_field(const VectorField& field, const Vec& x) {
  const GridSpec& g = field.grid();
  const CicStencil s = cic_stencil(g, x);
  Vec out;
  cic_for_each(g, s, [&](std::size_t cell, double w) {
    for (int a = 0; a < g.dim(); ++a) out[a] += w * field.comp(a)[cell];
  });
  return out;
}

}  // namespace kinfluid
