#pragma once

#include <array>
#include <span>

#include "kinfluid/coupling.hpp"
#include "kinfluid/params.hpp"
#include "kinfluid/spectral.hpp"

namespace kinfluid {

/// Mass totals and mean velocities:
///   f_c   total kinetic mass,          rho_c total fluid mass,
///   v_c   kinetic mean velocity,       m_c   momentum mean over fluid mass,
///   u_c   plain velocity average.
struct AveragedQuantities {
  double f_c = 0.0;
  double rho_c = 0.0;
  Vec v_c;
  Vec m_c;
  Vec u_c;
};

AveragedQuantities averaged_quantities(const SystemState& state, const ModelParams& params);

/// Common limit of v_c and m_c under conservation of masses and total
/// momentum: (kinetic momentum(0) + fluid momentum(0)) / (f_c + rho_c).
Vec predicted_limit_velocity(const SystemState& initial, const ModelParams& params);

/// The four-term fluctuation functional whose exponential decay is the
/// headline claim: kinetic velocity variance + fluid kinetic fluctuation +
/// density fluctuation + mean-velocity gap.
double lyapunov_L(const SystemState& state, const ModelParams& params);

/// E = int |v|^2 f + int rho |u|^2 + (2/(gamma-1)) int rho^gamma.
double total_energy(const SystemState& state, double gamma);

/// f(r; r0) = r int_{r0}^{r} (h^gamma - r0^gamma)/h^2 dh, nonnegative and
/// comparable to (r - r0)^2. Adaptive Gauss-Kronrod quadrature; f(0; r0)
/// equals the limit r0^gamma.
double pressure_deviation(double rho, double rho_c, double gamma);

/// Interacting energy: variance + fluid fluctuation + 2 int f(rho; rho_c)
/// + (f_c / (2 (f_c + rho_c))) |m_c - v_c|^2.
double interacting_energy(const SystemState& state, const ModelParams& params);

/// D = mu int |grad u|^2 + (mu + lambda) int |div u|^2 + int |u - v|^2 f.
double dissipation_D(const SystemState& state, const ModelParams& params);

/// m_c' = -(1/rho_c) sum_p w_p (u(x_p) - v_p); pressure, convection, and
/// viscosity telescope to zero on the torus.
Vec mc_prime(const SystemState& state, const ModelParams& params);

/// v_c' = +(1/f_c) sum_p w_p (u(x_p) - v_p) = -(rho_c/f_c) m_c'.
Vec vc_prime(const SystemState& state, const ModelParams& params);

/// Perturbed functionals built with the Bogovskii field b = B[rho - rho_c]:
///   E_sigma = E_int - 2 sigma int rho (u - m_c) . b
///   D_sigma = sum of the nine J terms, J1 = D.
struct PerturbedFunctionals {
  double e_sigma = 0.0;
  double d_sigma = 0.0;
  std::array<double, 9> j{};
};

PerturbedFunctionals perturbed_functionals(const SystemState& state, const ModelParams& params,
                                           double sigma, const SpectralWorkspace& workspace);

/// Upper bound on the bounded-Lipschitz distance between f and the
/// monokinetic state rho_f delta_{v_c}: sqrt(velocity variance) sqrt(f_c).
double bl_distance_bound(const SystemState& state);

/// One time-stamped row of every tracked functional and conservation tally.
struct FunctionalRow {
  double t = 0.0;
  double L = 0.0;
  double E_total = 0.0;
  double E_int = 0.0;
  double D = 0.0;
  double E_sigma = 0.0;
  double D_sigma = 0.0;
  std::array<double, 9> J{};
  double bl_bound = 0.0;
  double mass_fluid = 0.0;
  double mass_kinetic = 0.0;
  Vec total_momentum;
  Vec v_c;
  Vec m_c;
  Vec u_c;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double u_max = 0.0;
};

FunctionalRow evaluate_row(const SystemState& state, const ModelParams& params,
                           const SpectralWorkspace& workspace);

/// Drift and monotonicity summary over a history. Momentum drift is measured
/// relative to max(|P(0)|, sqrt(E(0) * total mass)) so a symmetric start with
/// P(0) = 0 stays meaningful.
struct ConservationReport {
  double mass_fluid_drift = 0.0;
  double mass_kinetic_drift = 0.0;
  double momentum_drift = 0.0;
  double max_energy_step_increase = 0.0;   // absolute, max over steps
  double max_e_sigma_step_increase = 0.0;  // absolute, max over steps
};

ConservationReport conservation_report(std::span<const FunctionalRow> history);

/// Log-linear decay rate of a positive series over the trailing window.
struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  double window_begin = 0.0;
  double window_end = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log(values) against t after dropping the leading
/// drop_fraction of the time span. Throws std::domain_error when the window
/// contains a non-positive value or fewer than 10 samples.
DecayFit decay_fit(std::span<const double> t, std::span<const double> values,
                   double drop_fraction = 0.2);

}  // namespace kinfluid
