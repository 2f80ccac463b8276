#pragma once

#include <complex>
#include <vector>

#include "kinfluid/field.hpp"
#include "kinfluid/grid.hpp"

// FFTW plan handles, kept opaque here.
struct fftw_plan_s;

namespace kinfluid {

/// Scalar field with vanishing discrete mean; the admissible right-hand side
/// of the periodic Poisson problem and of the Bogovskii operator.
class ZeroMeanField {
 public:
  explicit ZeroMeanField(ScalarField values);
  const ScalarField& values() const { return values_; }
  const GridSpec& grid() const { return values_.grid(); }

 private:
  ScalarField values_;
};

/// Spectral transforms on one grid. Holds cached FFTW plans, so one instance
/// per grid is enough; instances are safe to share across readers only if
/// calls are serialized (each call uses internal scratch buffers).
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const GridSpec& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const GridSpec& grid() const { return grid_; }

  /// Solve -Delta phi = f on the torus with zero-mean phi:
  /// phi_hat(k) = f_hat(k) / (4 pi^2 |k|^2), phi_hat(0) = 0.
  ScalarField solve_poisson_periodic(const ZeroMeanField& f) const;

  /// nu = -grad (-Delta)^{-1} f, the unique curl-free zero-mean field with
  /// div nu = f.
  VectorField bogovskii(const ZeroMeanField& f) const;

  /// B[div g] assembled directly in spectral space,
  /// nu_hat(k) = k (k . g_hat(k)) / |k|^2, without forming div g first.
  VectorField bogovskii_div_form(const VectorField& g) const;

  /// Periodic convolution h^N sum_y kernel(x - y) g(y); the kernel is given
  /// by its samples on the displacement lattice m h.
  ScalarField convolve(const ScalarField& kernel, const ScalarField& g) const;

  /// Spectral first derivative. The Nyquist mode's derivative is set to zero
  /// on even grids so real inputs map to real outputs.
  ScalarField derivative_spectral(const ScalarField& f, int axis) const;
  VectorField gradient_spectral(const ScalarField& f) const;
  ScalarField divergence_spectral(const VectorField& v) const;

 private:
  using Spectrum = std::vector<std::complex<double>>;

  Spectrum forward(const ScalarField& f) const;
  ScalarField inverse(const Spectrum& spec) const;
  /// Integer frequency of axis index i: i for i <= n/2, else i - n.
  int freq(int i) const;
  /// Frequency used in derivatives: as freq(), but zero at the Nyquist index.
  int deriv_freq(int i) const;

  GridSpec grid_;
  fftw_plan_s* fwd_;
  fftw_plan_s* bwd_;
  mutable Spectrum buf_;
};

}  // namespace kinfluid
