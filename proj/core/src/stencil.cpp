#include "kinfluid/stencil.hpp"

namespace kinfluid {

namespace {

template <class F>
void for_each_cell(const GridSpec& g, F&& fn) {
  std::array<int, 3> idx{};
  std::size_t flat = 0;
  for (idx[0] = 0; idx[0] < g.extent(0); ++idx[0])
    for (idx[1] = 0; idx[1] < g.extent(1); ++idx[1])
      for (idx[2] = 0; idx[2] < g.extent(2); ++idx[2]) fn(idx, flat++);
}

}  // namespace

ScalarField diff_centered(const ScalarField& g, int axis) {
  const GridSpec& grid = g.grid();
  ScalarField out(grid);
  const double scale = 1.0 / (2.0 * grid.h());
  for_each_cell(grid, [&](const std::array<int, 3>& idx, std::size_t flat) {
    const double plus = g[grid.neighbor(idx, axis, +1)];
    const double minus = g[grid.neighbor(idx, axis, -1)];
    out[flat] = (plus - minus) * scale;
  });
  return out;
}

ScalarField divergence_centered(const VectorField& v) {
  const GridSpec& grid = v.grid();
  ScalarField out(grid);
  const double scale = 1.0 / (2.0 * grid.h());
  for_each_cell(grid, [&](const std::array<int, 3>& idx, std::size_t flat) {
    double d = 0.0;
    for (int a = 0; a < grid.dim(); ++a)
      d += v.comp(a)[grid.neighbor(idx, a, +1)] - v.comp(a)[grid.neighbor(idx, a, -1)];
    out[flat] = d * scale;
  });
  return out;
}

VectorField gradient_centered(const ScalarField& g) {
  const GridSpec& grid = g.grid();
  VectorField out(grid);
  const double scale = 1.0 / (2.0 * grid.h());
  for_each_cell(grid, [&](const std::array<int, 3>& idx, std::size_t flat) {
    for (int a = 0; a < grid.dim(); ++a)
      out.comp(a)[flat] =
          (g[grid.neighbor(idx, a, +1)] - g[grid.neighbor(idx, a, -1)]) * scale;
  });
  return out;
}

ScalarField laplacian_centered(const ScalarField& g) {
  const GridSpec& grid = g.grid();
  ScalarField out(grid);
  const double scale = 1.0 / (grid.h() * grid.h());
  for_each_cell(grid, [&](const std::array<int, 3>& idx, std::size_t flat) {
    double d = 0.0;
    for (int a = 0; a < grid.dim(); ++a)
      d += g[grid.neighbor(idx, a, +1)] - 2.0 * g[flat] + g[grid.neighbor(idx, a, -1)];
    out[flat] = d * scale;
  });
  return out;
}

double grad_sq_integral(const VectorField& u) {
  const GridSpec& grid = u.grid();
  double s = 0.0;
  for (int a = 0; a < grid.dim(); ++a)
    for (int b = 0; b < grid.dim(); ++b) {
      const ScalarField d = diff_centered(u.comp(a), b);
      for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * d[i];
    }
  return s * grid.cell_volume();
}

double div_sq_integral(const VectorField& u) {
  const ScalarField d = divergence_centered(u);
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * d[i];
  return s * d.grid().cell_volume();
}

}  // namespace kinfluid
