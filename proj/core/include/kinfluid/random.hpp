#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace kinfluid {

/// Seeded draws on top of mt19937_64. The uniform and normal transforms are
/// spelled out here so streams do not depend on standard-library
/// distribution internals and stay bit-stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one value per call, two draws).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kinfluid
