#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kinfluid/grid.hpp"
#include "kinfluid/vec.hpp"

namespace kinfluid {

enum class CollisionType { None, LocalAlignment, NonlocalAlignment };

inline std::string to_string(CollisionType t) {
  switch (t) {
    case CollisionType::None: return "none";
    case CollisionType::LocalAlignment: return "local_alignment";
    case CollisionType::NonlocalAlignment: return "nonlocal_alignment";
  }
  return "none";
}

/// Periodic communication weight psi for the nonlocal alignment force.
/// Two built-in shapes, both positive and even on the torus:
///   constant:    psi(x) = c
///   cosine_bump: psi(x) = base + amplitude * prod_a (1 + cos(2 pi x_a)) / 2
class AlignmentKernel {
 public:
  enum class Kind { Constant, CosineBump };

  static AlignmentKernel constant(double c) {
    AlignmentKernel k;
    k.kind_ = Kind::Constant;
    k.constant_ = c;
    return k;
  }
  static AlignmentKernel cosine_bump(double amplitude, double base) {
    AlignmentKernel k;
    k.kind_ = Kind::CosineBump;
    k.amplitude_ = amplitude;
    k.base_ = base;
    return k;
  }

  Kind kind() const { return kind_; }
  double constant_value() const { return constant_; }
  double amplitude() const { return amplitude_; }
  double base() const { return base_; }

  double operator()(const Vec& x, int dim) const {
    if (kind_ == Kind::Constant) return constant_;
    double p = base_;
    double bump = amplitude_;
    for (int a = 0; a < dim; ++a)
      bump *= 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * x[a]));
    return p + bump;
  }

  /// Positivity and evenness, checked on every displacement lattice point
  /// m h, m = 0..n-1 per axis. Throws on failure.
  void validate_on(const GridSpec& grid) const {
    if (kind_ == Kind::Constant) {
      if (!(constant_ > 0.0)) throw std::invalid_argument("alignment kernel: constant must be positive");
    } else {
      if (!(amplitude_ > 0.0)) throw std::invalid_argument("alignment kernel: amplitude must be positive");
      if (!(base_ > 0.0)) throw std::invalid_argument("alignment kernel: base must be positive");
    }
    for (std::size_t i = 0; i < grid.cells(); ++i) {
      const auto idx = grid.unravel(i);
      Vec x, xm;
      for (int a = 0; a < grid.dim(); ++a) {
        x[a] = idx[a] * grid.h();
        xm[a] = wrap_unit(-x[a]);
      }
      const double p = (*this)(x, grid.dim());
      const double pm = (*this)(xm, grid.dim());
      if (!(p > 0.0)) throw std::invalid_argument("alignment kernel: psi must be positive on the grid");
      if (std::abs(p - pm) > 1e-12 * (std::abs(p) + 1.0))
        throw std::invalid_argument("alignment kernel: psi must be symmetric on the grid");
    }
  }

 private:
  Kind kind_ = Kind::Constant;
  double constant_ = 1.0;
  double amplitude_ = 1.0;
  double base_ = 0.1;
};

/// Physical and numerical parameters of the coupled system.
struct ModelParams {
  double gamma = 2.0;    // adiabatic exponent, p(rho) = rho^gamma
  double mu = 0.05;      // shear viscosity
  double lambda = 0.0;   // second Lame coefficient, 2 mu + lambda > 0
  CollisionType collision = CollisionType::None;
  AlignmentKernel kernel = AlignmentKernel::constant(1.0);
  double sigma = 0.05;       // perturbation size of the sigma-functionals
  double rho_floor = 1e-10;  // floor for u = m / rho
  double rho_f_floor = 1e-10;
  double cfl = 0.5;

  void validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!(2.0 * mu + lambda > 0.0)) throw std::invalid_argument("2*mu + lambda must be positive");
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
    if (!(rho_floor > 0.0)) throw std::invalid_argument("rho_floor must be positive");
    if (!(rho_f_floor > 0.0)) throw std::invalid_argument("rho_f_floor must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0,1]");
  }
};

}  // namespace kinfluid
