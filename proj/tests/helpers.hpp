#pragma once

#include <functional>
#include <vector>

#include "kinfluid/coupling.hpp"
#include "kinfluid/random.hpp"
#include "kinfluid/state.hpp"
#include "kinfluid/transfer.hpp"

namespace kinfluid::test {

inline ScalarField make_scalar(const GridSpec& g, const std::function<double(Vec)>& fn) {
  ScalarField f(g);
  for (std::size_t i = 0; i < g.cells(); ++i) f[i] = fn(g.cell_center(i));
  return f;
}

inline VectorField make_vector(const GridSpec& g, const std::function<Vec(Vec)>& fn) {
  VectorField f(g);
  for (std::size_t i = 0; i < g.cells(); ++i) f.set(i, fn(g.cell_center(i)));
  return f;
}

inline FluidState uniform_fluid(const GridSpec& g, double rho, const Vec& u = Vec{}) {
  ScalarField r(g, rho);
  VectorField m(g);
  for (std::size_t i = 0; i < g.cells(); ++i)
    for (int a = 0; a < g.dim(); ++a) m.comp(a)[i] = rho * u[a];
  return FluidState(std::move(r), std::move(m));
}

inline ParticleEnsemble random_ensemble(int dim, std::size_t count, Rng& rng,
                                        double speed_scale = 1.0, double total_mass = 1.0) {
  std::vector<Vec> xs(count), vs(count);
  for (std::size_t p = 0; p < count; ++p)
    for (int a = 0; a < dim; ++a) xs[p][a] = rng.uniform();
  for (std::size_t p = 0; p < count; ++p)
    for (int a = 0; a < dim; ++a) vs[p][a] = speed_scale * rng.normal();
  std::vector<double> ws(count, total_mass / static_cast<double>(count));
  return ParticleEnsemble(dim, std::move(xs), std::move(vs), std::move(ws));
}

/// Zero-mean band-limited field: a sum of random integer-frequency cosines.
inline ScalarField random_band_limited(const GridSpec& g, Rng& rng, int max_freq = 5,
                                       int modes = 6) {
  ScalarField f(g, 0.0);
  for (int m = 0; m < modes; ++m) {
    Vec k;
    double k_norm = 0.0;
    while (k_norm == 0.0) {
      k_norm = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        k[a] = std::floor(rng.uniform() * (2 * max_freq + 1)) - max_freq;
        k_norm += k[a] * k[a];
      }
    }
    const double amp = 2.0 * rng.uniform() - 1.0;
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const Vec x = g.cell_center(i);
      f[i] += amp * std::cos(2.0 * std::numbers::pi * dot(k, x) + phase);
    }
  }
  return f;
}

}  // namespace kinfluid::test
