#pragma once

#include "kinfluid/field.hpp"
#include "kinfluid/grid.hpp"
#include "kinfluid/state.hpp"

namespace kinfluid {

/// Cloud-in-cell stencil of a point: the 2^N cell centers bracketing it with
/// multilinear weights. The same stencil drives deposition and interpolation,
/// which makes the two operations exact adjoints of each other.
struct CicStencil {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  std::array<double, 3> w_hi{0.0, 0.0, 0.0};
};

inline CicStencil cic_stencil(const GridSpec& grid, const Vec& x) {
  CicStencil s;
  for (int a = 0; a < grid.dim(); ++a) {
    const double t = wrap_unit(x[a]) * grid.n() - 0.5;
    const double fl = std::floor(t);
    const int base = static_cast<int>(fl);
    s.lo[a] = grid.wrap_axis(a, base);
    s.hi[a] = grid.wrap_axis(a, base + 1);
    s.w_hi[a] = t - fl;
  }
  return s;
}

/// Visit the stencil corners in a fixed deterministic order as
/// (flat cell index, multilinear weight).
template <class F>
void cic_for_each(const GridSpec& grid, const CicStencil& s, F&& fn) {
  const int corners = 1 << grid.dim();
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < grid.dim(); ++a) {
      if ((c >> a) & 1) {
        w *= s.w_hi[a];
        idx[a] = s.hi[a];
      } else {
        w *= 1.0 - s.w_hi[a];
        idx[a] = s.lo[a];
      }
    }
    fn(grid.ravel(idx), w);
  }
}

/// Velocity moments of the ensemble on the grid:
///   rho_f = integral of f dv,  j_f = integral of v f dv,
///   u_f = j_f / max(rho_f, rho_f_floor).
struct KineticMoments {
  ScalarField rho_f;
  VectorField j_f;
  VectorField u_f;
};

/// Cloud-in-cell deposition of w_p and w_p v_p, divided by cell volume.
/// Cell sums times cell volume reproduce the particle totals to round-off.
KineticMoments deposit_moments(const ParticleEnsemble& particles, const GridSpec& grid,
                               double rho_f_floor);

/// Multilinear periodic interpolation with the deposition stencil.
double interpolate_field(const ScalarField& field, const Vec& x);
Vec interpolate_field(const VectorField& field, const Vec& x);

}  // namespace kinfluid
