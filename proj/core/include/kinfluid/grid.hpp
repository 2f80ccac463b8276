#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "kinfluid/vec.hpp"

namespace kinfluid {

/// Reduce a coordinate into [0,1) on the unit torus.
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  // floor rounding can land exactly on 1.0 for tiny negative inputs
  return r >= 1.0 ? r - 1.0 : r;
}

/// Uniform periodic grid on the unit torus [0,1)^N, N in {1,2,3}, with
/// cell-centered nodes at (i + 1/2) h, h = 1/n. Axes beyond the active
/// dimension have extent 1, so stencil loops can always run over three axes.
class GridSpec {
 public:
  GridSpec(int dimension, int cells_per_axis) : dim_(dimension), n_(cells_per_axis) {
    if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("GridSpec: dimension must be 1, 2, or 3");
    if (n_ < 4) throw std::invalid_argument("GridSpec: cells_per_axis must be at least 4");
    h_ = 1.0 / n_;
    cells_ = 1;
    for (int a = 0; a < dim_; ++a) cells_ *= static_cast<std::size_t>(n_);
    vol_ = 1.0;
    for (int a = 0; a < dim_; ++a) vol_ *= h_;
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  std::size_t cells() const { return cells_; }
  double cell_volume() const { return vol_; }

  int extent(int axis) const { return axis < dim_ ? n_ : 1; }

  int wrap_axis(int axis, int i) const {
    const int e = extent(axis);
    i %= e;
    return i < 0 ? i + e : i;
  }

  std::size_t ravel(const std::array<int, 3>& idx) const {
    return (static_cast<std::size_t>(idx[0]) * extent(1) + idx[1]) * extent(2) + idx[2];
  }

  std::array<int, 3> unravel(std::size_t flat) const {
    const int e1 = extent(1), e2 = extent(2);
    std::array<int, 3> idx{};
    idx[2] = static_cast<int>(flat % e2);
    flat /= e2;
    idx[1] = static_cast<int>(flat % e1);
    idx[0] = static_cast<int>(flat / e1);
    return idx;
  }

  /// Flat index of the periodic neighbor shifted along one axis.
  std::size_t neighbor(const std::array<int, 3>& idx, int axis, int offset) const {
    std::array<int, 3> j = idx;
    j[axis] = wrap_axis(axis, j[axis] + offset);
    return ravel(j);
  }

  double center(int i) const { return (i + 0.5) * h_; }

  Vec cell_center(std::size_t flat) const {
    const auto idx = unravel(flat);
    Vec x;
    for (int a = 0; a < dim_; ++a) x[a] = center(idx[a]);
    return x;
  }

  bool operator==(const GridSpec&) const = default;

 private:
  int dim_;
  int n_;
  double h_;
  double vol_;
  std::size_t cells_;
};

}  // namespace kinfluid
