#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kinfluid/grid.hpp"
#include "kinfluid/vec.hpp"

namespace kinfluid {

/// Cell-centered scalar field on a GridSpec, stored row-major.
class ScalarField {
 public:
  explicit ScalarField(const GridSpec& grid, double fill = 0.0)
      : grid_(grid), data_(grid.cells(), fill) {}

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }
  /// Cell sum times cell volume, i.e. the discrete integral over the torus.
  double integral() const { return sum() * grid_.cell_volume(); }

  double min() const { return *std::min_element(data_.begin(), data_.end()); }
  double max() const { return *std::max_element(data_.begin(), data_.end()); }
  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  ScalarField& operator+=(const ScalarField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ScalarField& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  ScalarField& operator-=(double s) {
    for (double& v : data_) v -= s;
    return *this;
  }

 private:
  GridSpec grid_;
  std::vector<double> data_;
};

/// Cell-centered vector field with one contiguous array per active component.
class VectorField {
 public:
  explicit VectorField(const GridSpec& grid) : grid_(grid) {
    comp_.reserve(static_cast<std::size_t>(grid.dim()));
    for (int a = 0; a < grid.dim(); ++a) comp_.emplace_back(grid);
  }

  const GridSpec& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  std::size_t size() const { return grid_.cells(); }

  ScalarField& comp(int a) { return comp_[static_cast<std::size_t>(a)]; }
  const ScalarField& comp(int a) const { return comp_[static_cast<std::size_t>(a)]; }

  Vec at(std::size_t i) const {
    Vec v;
    for (int a = 0; a < dim(); ++a) v[a] = comp_[static_cast<std::size_t>(a)][i];
    return v;
  }
  void set(std::size_t i, const Vec& v) {
    for (int a = 0; a < dim(); ++a) comp_[static_cast<std::size_t>(a)][i] = v[a];
  }

  /// Max Euclidean norm over cells.
  double max_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, norm2(at(i)));
    return std::sqrt(m);
  }

  /// Componentwise cell sum times cell volume.
  Vec integral() const {
    Vec s;
    for (int a = 0; a < dim(); ++a) s[a] = comp_[static_cast<std::size_t>(a)].integral();
    return s;
  }

  bool all_finite() const {
    for (const auto& f : comp_)
      if (!f.all_finite()) return false;
    return true;
  }

  VectorField& operator+=(const VectorField& o) {
    for (int a = 0; a < dim(); ++a) comp(a) += o.comp(a);
    return *this;
  }
  VectorField& operator*=(double s) {
    for (auto& f : comp_) f *= s;
    return *this;
  }

 private:
  GridSpec grid_;
  std::vector<ScalarField> comp_;
};

}  // namespace kinfluid
