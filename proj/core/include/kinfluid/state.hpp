#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kinfluid/field.hpp"
#include "kinfluid/grid.hpp"
#include "kinfluid/params.hpp"
#include "kinfluid/vec.hpp"

namespace kinfluid {

/// Density and momentum density m = rho u of the fluid phase.
struct FluidState {
  ScalarField rho;
  VectorField momentum;

  FluidState(ScalarField rho_, VectorField momentum_)
      : rho(std::move(rho_)), momentum(std::move(momentum_)) {
    if (!(rho.grid() == momentum.grid()))
      throw std::invalid_argument("FluidState: rho and momentum live on different grids");
  }

  const GridSpec& grid() const { return rho.grid(); }

  void validate() const {
    if (!rho.all_finite() || !momentum.all_finite())
      throw std::invalid_argument("FluidState: non-finite field values");
    if (!(rho.min() > 0.0)) throw std::invalid_argument("FluidState: rho must be positive");
  }
};

/// u = m / max(rho, rho_floor), evaluated cellwise.
VectorField derive_velocity(const FluidState& fluid, const ModelParams& params);

/// Weighted particles (x_p, v_p, w_p) approximating f(x,v,t). Positions are
/// wrapped into [0,1)^N at construction; weights must be positive.
class ParticleEnsemble {
 public:
  ParticleEnsemble(int dim, std::vector<Vec> positions, std::vector<Vec> velocities,
                   std::vector<double> weights)
      : dim_(dim),
        pos_(std::move(positions)),
        vel_(std::move(velocities)),
        weight_(std::move(weights)) {
    if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("ParticleEnsemble: dimension must be 1..3");
    if (pos_.empty()) throw std::invalid_argument("ParticleEnsemble: at least one particle required");
    if (pos_.size() != vel_.size() || pos_.size() != weight_.size())
      throw std::invalid_argument("ParticleEnsemble: position/velocity/weight lengths differ");
    for (auto& x : pos_) {
      if (!all_finite(x)) throw std::invalid_argument("ParticleEnsemble: non-finite position");
      for (int a = 0; a < dim_; ++a) x[a] = wrap_unit(x[a]);
      for (int a = dim_; a < 3; ++a) x[a] = 0.0;
    }
    for (auto& v : vel_) {
      if (!all_finite(v)) throw std::invalid_argument("ParticleEnsemble: non-finite velocity");
      for (int a = dim_; a < 3; ++a) v[a] = 0.0;
    }
    for (double w : weight_)
      if (!(w > 0.0)) throw std::invalid_argument("ParticleEnsemble: weights must be positive");
  }

  int dim() const { return dim_; }
  std::size_t size() const { return pos_.size(); }

  const std::vector<Vec>& positions() const { return pos_; }
  const std::vector<Vec>& velocities() const { return vel_; }
  const std::vector<double>& weights() const { return weight_; }

  double total_weight() const {
    double s = 0.0;
    for (double w : weight_) s += w;
    return s;
  }

  double max_speed() const {
    double m = 0.0;
    for (const auto& v : vel_) m = std::max(m, norm2(v));
    return std::sqrt(m);
  }

 private:
  int dim_;
  std::vector<Vec> pos_;
  std::vector<Vec> vel_;
  std::vector<double> weight_;
};

}  // namespace kinfluid
