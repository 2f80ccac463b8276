#include "kinfluid/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace kinfluid {

namespace {

// The FFTW planner is not thread-safe; executions on distinct buffers are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

ZeroMeanField::ZeroMeanField(ScalarField values) : values_(std::move(values)) {
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) abs_sum += std::abs(values_[i]);
  const double vol = values_.grid().cell_volume();
  if (std::abs(values_.sum() * vol) > 1e-12 * (abs_sum * vol + 1.0))
    throw std::invalid_argument("ZeroMeanField: nonzero mean");
}

SpectralWorkspace::SpectralWorkspace(const GridSpec& grid)
    : grid_(grid), buf_(grid.cells()) {
  int dims[3] = {grid.extent(0), grid.extent(1), grid.extent(2)};
  auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  fwd_ = fftw_plan_dft(grid.dim(), dims, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft(grid.dim(), dims, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (fwd_ == nullptr || bwd_ == nullptr)
    throw std::runtime_error("SpectralWorkspace: FFTW plan creation failed");
}

SpectralWorkspace::~SpectralWorkspace() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
}

int SpectralWorkspace::freq(int i) const { return i <= grid_.n() / 2 ? i : i - grid_.n(); }

int SpectralWorkspace::deriv_freq(int i) const {
  if (grid_.n() % 2 == 0 && i == grid_.n() / 2) return 0;
  return freq(i);
}

SpectralWorkspace::Spectrum SpectralWorkspace::forward(const ScalarField& f) const {
  for (std::size_t i = 0; i < f.size(); ++i) buf_[i] = f[i];
  fftw_execute(fwd_);
  return buf_;
}

ScalarField SpectralWorkspace::inverse(const Spectrum& spec) const {
  // element copy: the FFTW plans are bound to buf_'s storage
  std::copy(spec.begin(), spec.end(), buf_.begin());
  fftw_execute(bwd_);
  ScalarField out(grid_);
  const double scale = 1.0 / static_cast<double>(grid_.cells());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf_[i].real() * scale;
  return out;
}

ScalarField SpectralWorkspace::solve_poisson_periodic(const ZeroMeanField& f) const {
  Spectrum spec = forward(f.values());
  std::size_t m = 0;
  for (int i0 = 0; i0 < grid_.extent(0); ++i0)
    for (int i1 = 0; i1 < grid_.extent(1); ++i1)
      for (int i2 = 0; i2 < grid_.extent(2); ++i2, ++m) {
        const double k0 = freq(i0), k1 = grid_.dim() > 1 ? freq(i1) : 0,
                     k2 = grid_.dim() > 2 ? freq(i2) : 0;
        const double ksq = k0 * k0 + k1 * k1 + k2 * k2;
        if (ksq == 0.0)
          spec[m] = 0.0;
        else
          spec[m] /= two_pi * two_pi * ksq;
      }
  return inverse(spec);
}

namespace {

#ifndef NDEBUG
// The curl and mean parts of the defining triple hold for every input
// (div nu = f additionally needs f free of Nyquist content, so it is
// checked in tests on band-limited data instead).
void assert_curl_free_zero_mean(const SpectralWorkspace& ws, const VectorField& nu) {
  const GridSpec& g = nu.grid();
  double scale = 1e-30;
  for (int a = 0; a < g.dim(); ++a) scale = std::max(scale, nu.comp(a).max_abs());
  for (int a = 0; a < g.dim(); ++a) {
    assert(std::abs(nu.comp(a).integral()) <= 1e-12 * scale + 1e-300);
    for (int b = a + 1; b < g.dim(); ++b) {
      const ScalarField da = ws.derivative_spectral(nu.comp(b), a);
      const ScalarField db = ws.derivative_spectral(nu.comp(a), b);
      for (std::size_t i = 0; i < g.cells(); ++i)
        assert(std::abs(da[i] - db[i]) <= 1e-9 * std::max(1.0, scale));
    }
  }
}
#endif

}  // namespace

VectorField SpectralWorkspace::bogovskii(const ZeroMeanField& f) const {
  const Spectrum spec = forward(f.values());
  VectorField nu(grid_);
  Spectrum comp(grid_.cells());
  for (int a = 0; a < grid_.dim(); ++a) {
    std::size_t m = 0;
    for (int i0 = 0; i0 < grid_.extent(0); ++i0)
      for (int i1 = 0; i1 < grid_.extent(1); ++i1)
        for (int i2 = 0; i2 < grid_.extent(2); ++i2, ++m) {
          const int idx[3] = {i0, i1, i2};
          const double k0 = freq(i0), k1 = grid_.dim() > 1 ? freq(i1) : 0,
                       k2 = grid_.dim() > 2 ? freq(i2) : 0;
          const double ksq = k0 * k0 + k1 * k1 + k2 * k2;
          if (ksq == 0.0) {
            comp[m] = 0.0;
            continue;
          }
          const double kd = deriv_freq(idx[a]);
          // nu_hat = -(2 pi i k_a) f_hat / (4 pi^2 |k|^2)
          const std::complex<double> phi_hat = spec[m] / (two_pi * two_pi * ksq);
          comp[m] = std::complex<double>(0.0, -two_pi * kd) * phi_hat;
        }
    nu.comp(a) = inverse(comp);
  }
#ifndef NDEBUG
  assert_curl_free_zero_mean(*this, nu);
#endif
  return nu;
}

VectorField SpectralWorkspace::bogovskii_div_form(const VectorField& g) const {
  std::vector<Spectrum> ghat;
  ghat.reserve(static_cast<std::size_t>(grid_.dim()));
  for (int a = 0; a < grid_.dim(); ++a) ghat.push_back(forward(g.comp(a)));

  VectorField nu(grid_);
  Spectrum comp(grid_.cells());
  for (int a = 0; a < grid_.dim(); ++a) {
    std::size_t m = 0;
    for (int i0 = 0; i0 < grid_.extent(0); ++i0)
      for (int i1 = 0; i1 < grid_.extent(1); ++i1)
        for (int i2 = 0; i2 < grid_.extent(2); ++i2, ++m) {
          const int idx[3] = {i0, i1, i2};
          const double k0 = freq(i0), k1 = grid_.dim() > 1 ? freq(i1) : 0,
                       k2 = grid_.dim() > 2 ? freq(i2) : 0;
          const double ksq = k0 * k0 + k1 * k1 + k2 * k2;
          if (ksq == 0.0) {
            comp[m] = 0.0;
            continue;
          }
          std::complex<double> kdotg = 0.0;
          for (int b = 0; b < grid_.dim(); ++b)
            kdotg += static_cast<double>(deriv_freq(idx[b])) * ghat[static_cast<std::size_t>(b)][m];
          comp[m] = static_cast<double>(deriv_freq(idx[a])) * kdotg / ksq;
        }
    nu.comp(a) = inverse(comp);
  }
  return nu;
}

ScalarField SpectralWorkspace::convolve(const ScalarField& kernel, const ScalarField& g) const {
  const Spectrum khat = forward(kernel);
  Spectrum spec = forward(g);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= khat[i];
  ScalarField out = inverse(spec);
  out *= grid_.cell_volume();
  return out;
}

ScalarField SpectralWorkspace::derivative_spectral(const ScalarField& f, int axis) const {
  Spectrum spec = forward(f);
  std::size_t m = 0;
  for (int i0 = 0; i0 < grid_.extent(0); ++i0)
    for (int i1 = 0; i1 < grid_.extent(1); ++i1)
      for (int i2 = 0; i2 < grid_.extent(2); ++i2, ++m) {
        const int idx[3] = {i0, i1, i2};
        spec[m] *= std::complex<double>(0.0, two_pi * deriv_freq(idx[axis]));
      }
  return inverse(spec);
}

VectorField SpectralWorkspace::gradient_spectral(const ScalarField& f) const {
  VectorField out(grid_);
  for (int a = 0; a < grid_.dim(); ++a) out.comp(a) = derivative_spectral(f, a);
  return out;
}

ScalarField SpectralWorkspace::divergence_spectral(const VectorField& v) const {
  ScalarField out(grid_);
  for (int a = 0; a < grid_.dim(); ++a) out += derivative_spectral(v.comp(a), a);
  return out;
}

}  // namespace kinfluid
