#pragma once

#include <array>
#include <cmath>

namespace kinfluid {

/// Fixed-capacity spatial vector for N <= 3. Components beyond the active
/// dimension are kept at zero, so dot products and norms work unchanged in
/// 1D/2D.
struct Vec {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec() = default;
  constexpr Vec(double x, double y = 0.0, double z = 0.0) : c{x, y, z} {}

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    c[2] += o.c[2];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    c[2] -= o.c[2];
    return *this;
  }
  Vec& operator*=(double s) {
    c[0] *= s;
    c[1] *= s;
    c[2] *= s;
    return *this;
  }

  bool operator==(const Vec&) const = default;
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator-(const Vec& a) { return Vec{-a.c[0], -a.c[1], -a.c[2]}; }

inline double dot(const Vec& a, const Vec& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline bool all_finite(const Vec& a) {
  return std::isfinite(a.c[0]) && std::isfinite(a.c[1]) && std::isfinite(a.c[2]);
}

}  // namespace kinfluid
