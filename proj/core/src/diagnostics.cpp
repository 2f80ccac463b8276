#include "kinfluid/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "kinfluid/stencil.hpp"
#include "kinfluid/transfer.hpp"

namespace kinfluid {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK constants).
constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& kronrod, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double gauss = 0.0;
  kronrod = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double offset = half * kGkNodes[j];
    const double fsum = (j == 7) ? f(mid) : f(mid - offset) + f(mid + offset);
    kronrod += kKronrodWeights[j] * fsum;
    // odd indices are the embedded Gauss-7 nodes, j == 7 the shared center
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  err = std::abs(kronrod - gauss);
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth) {
  double value = 0.0, err = 0.0;
  gk15(f, a, b, value, err);
  if (err <= tol || depth >= 50) return value;
  const double mid = 0.5 * (a + b);
  return adaptive_gk(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gk(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

AveragedQuantities averaged_quantities(const SystemState& state, const ModelParams& params) {
  AveragedQuantities aq;
  aq.f_c = state.particles.total_weight();
  aq.rho_c = state.fluid.rho.integral();
  if (!(aq.f_c > 0.0)) throw std::runtime_error("averaged_quantities: zero kinetic mass");
  if (!(aq.rho_c > 0.0)) throw std::runtime_error("averaged_quantities: zero fluid mass");

  Vec kinetic_momentum;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p) kinetic_momentum += ws[p] * vs[p];
  aq.v_c = (1.0 / aq.f_c) * kinetic_momentum;
  aq.m_c = (1.0 / aq.rho_c) * state.fluid.momentum.integral();
  aq.u_c = derive_velocity(state.fluid, params).integral();
  return aq;
}

Vec predicted_limit_velocity(const SystemState& initial, const ModelParams& params) {
  const AveragedQuantities aq = averaged_quantities(initial, params);
  const Vec total = aq.f_c * aq.v_c + aq.rho_c * aq.m_c;
  return (1.0 / (aq.f_c + aq.rho_c)) * total;
}

double lyapunov_L(const SystemState& state, const ModelParams& params) {
  const AveragedQuantities aq = averaged_quantities(state, params);
  const GridSpec& grid = state.grid();
  const VectorField u = derive_velocity(state.fluid, params);

  double variance = 0.0;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p)
    variance += ws[p] * norm2(vs[p] - aq.v_c);

  double fluid_fluct = 0.0;
  double density_fluct = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    fluid_fluct += state.fluid.rho[i] * norm2(u.at(i) - aq.m_c);
    const double d = state.fluid.rho[i] - aq.rho_c;
    density_fluct += d * d;
  }
  fluid_fluct *= grid.cell_volume();
  density_fluct *= grid.cell_volume();

  return variance + fluid_fluct + density_fluct + norm2(aq.v_c - aq.m_c);
}

double total_energy(const SystemState& state, double gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("total_energy: gamma must exceed 1");
  const GridSpec& grid = state.grid();

  double kinetic = 0.0;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p) kinetic += ws[p] * norm2(vs[p]);

  double fluid_kinetic = 0.0;
  double pressure = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const double rho = state.fluid.rho[i];
    double m2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double m = state.fluid.momentum.comp(a)[i];
      m2 += m * m;
    }
    // rho |u|^2 written as |m|^2 / rho
    fluid_kinetic += m2 / std::max(rho, 1e-300);
    pressure += std::pow(rho, gamma);
  }
  fluid_kinetic *= grid.cell_volume();
  pressure *= grid.cell_volume() * 2.0 / (gamma - 1.0);

  return kinetic + fluid_kinetic + pressure;
}

double pressure_deviation(double rho, double rho_c, double gamma) {
  if (rho < 0.0) throw std::invalid_argument("pressure_deviation: negative rho");
  if (!(rho_c > 0.0)) throw std::invalid_argument("pressure_deviation: rho_c must be positive");
  if (!(gamma > 1.0)) throw std::invalid_argument("pressure_deviation: gamma must exceed 1");
  if (rho == rho_c) return 0.0;
  // The integral diverges like rho_c^gamma / r as r -> 0, but r times it has
  // the finite limit rho_c^gamma.
  if (rho == 0.0) return std::pow(rho_c, gamma);

  const double p_c = std::pow(rho_c, gamma);
  const auto integrand = [gamma, p_c](double h) {
    return (std::pow(h, gamma) - p_c) / (h * h);
  };
  const double lo = std::min(rho, rho_c);
  const double hi = std::max(rho, rho_c);
  double rough = 0.0, err = 0.0;
  gk15(integrand, lo, hi, rough, err);
  const double tol = 1e-13 * std::max(1.0, std::abs(rough));
  double integral = adaptive_gk(integrand, lo, hi, tol, 0);
  if (rho < rho_c) integral = -integral;
  return std::max(0.0, rho * integral);
}

double interacting_energy(const SystemState& state, const ModelParams& params) {
  const AveragedQuantities aq = averaged_quantities(state, params);
  const GridSpec& grid = state.grid();
  const VectorField u = derive_velocity(state.fluid, params);

  double variance = 0.0;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p)
    variance += ws[p] * norm2(vs[p] - aq.v_c);

  double fluid_fluct = 0.0;
  double pressure_dev = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    fluid_fluct += state.fluid.rho[i] * norm2(u.at(i) - aq.m_c);
    pressure_dev += pressure_deviation(state.fluid.rho[i], aq.rho_c, params.gamma);
  }
  fluid_fluct *= grid.cell_volume();
  pressure_dev *= 2.0 * grid.cell_volume();

  const double gap = aq.f_c / (2.0 * (aq.f_c + aq.rho_c)) * norm2(aq.m_c - aq.v_c);
  return variance + fluid_fluct + pressure_dev + gap;
}

double dissipation_D(const SystemState& state, const ModelParams& params) {
  const VectorField u = derive_velocity(state.fluid, params);
  double out = params.mu * grad_sq_integral(u) + (params.mu + params.lambda) * div_sq_integral(u);
  const auto& xs = state.particles.positions();
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p)
    out += ws[p] * norm2(interpolate_field(u, xs[p]) - vs[p]);
  return out;
}

namespace {

/// sum_p w_p (u(x_p) - v_p), the total drag on the particle phase.
Vec drag_total(const SystemState& state, const ModelParams& params) {
  const VectorField u = derive_velocity(state.fluid, params);
  Vec total;
  const auto& xs = state.particles.positions();
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p)
    total += ws[p] * (interpolate_field(u, xs[p]) - vs[p]);
  return total;
}

}  // namespace

Vec mc_prime(const SystemState& state, const ModelParams& params) {
  const double rho_c = state.fluid.rho.integral();
  return (-1.0 / rho_c) * drag_total(state, params);
}

Vec vc_prime(const SystemState& state, const ModelParams& params) {
  const double f_c = state.particles.total_weight();
  return (1.0 / f_c) * drag_total(state, params);
}

PerturbedFunctionals perturbed_functionals(const SystemState& state, const ModelParams& params,
                                           double sigma, const SpectralWorkspace& workspace) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("perturbed_functionals: sigma must be >= 0");
  PerturbedFunctionals out;
  out.j[0] = dissipation_D(state, params);
  const double e_int = interacting_energy(state, params);
  if (sigma == 0.0) {
    out.e_sigma = e_int;
    out.d_sigma = out.j[0];
    return out;
  }

  const GridSpec& grid = state.grid();
  const double vol = grid.cell_volume();
  const AveragedQuantities aq = averaged_quantities(state, params);
  const VectorField u = derive_velocity(state.fluid, params);
  const ScalarField& rho = state.fluid.rho;

  ScalarField delta = rho;  // rho - rho_c, zero-mean on the unit torus
  delta -= aq.rho_c;
  const VectorField b = workspace.bogovskii(ZeroMeanField(delta));

  // J2: sigma int rho u . grad((u - m_c) . b)
  ScalarField coupling_scalar(grid);
  for (std::size_t i = 0; i < grid.cells(); ++i)
    coupling_scalar[i] = dot(u.at(i) - aq.m_c, b.at(i));
  const VectorField grad_cs = gradient_centered(coupling_scalar);
  double j2 = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) j2 += rho[i] * dot(u.at(i), grad_cs.at(i));
  out.j[1] = sigma * j2 * vol;

  // J3: -sigma int rho (u . grad u) . b
  double j3 = 0.0;
  {
    std::vector<ScalarField> du;  // du[a*dim+bx] = d_bx u_a
    du.reserve(static_cast<std::size_t>(grid.dim() * grid.dim()));
    for (int a = 0; a < grid.dim(); ++a)
      for (int bx = 0; bx < grid.dim(); ++bx) du.push_back(diff_centered(u.comp(a), bx));
    for (std::size_t i = 0; i < grid.cells(); ++i) {
      Vec conv;
      for (int a = 0; a < grid.dim(); ++a) {
        double s = 0.0;
        for (int bx = 0; bx < grid.dim(); ++bx)
          s += u.comp(bx)[i] * du[static_cast<std::size_t>(a * grid.dim() + bx)][i];
        conv[a] = s;
      }
      j3 += rho[i] * dot(conv, b.at(i));
    }
  }
  out.j[2] = -sigma * j3 * vol;

  // J4: sigma int (rho - rho_c)(rho^gamma - rho_c^gamma), pointwise >= 0
  double j4 = 0.0;
  const double p_c = std::pow(aq.rho_c, params.gamma);
  for (std::size_t i = 0; i < grid.cells(); ++i)
    j4 += delta[i] * (std::pow(rho[i], params.gamma) - p_c);
  out.j[3] = sigma * j4 * vol;

  // J5: -sigma mu int grad u : grad b
  double j5 = 0.0;
  for (int a = 0; a < grid.dim(); ++a)
    for (int bx = 0; bx < grid.dim(); ++bx) {
      const ScalarField dua = diff_centered(u.comp(a), bx);
      const ScalarField dba = diff_centered(b.comp(a), bx);
      for (std::size_t i = 0; i < grid.cells(); ++i) j5 += dua[i] * dba[i];
    }
  out.j[4] = -sigma * params.mu * j5 * vol;

  // J6: sigma int (u - v) . b f
  double j6 = 0.0;
  {
    const auto& xs = state.particles.positions();
    const auto& vs = state.particles.velocities();
    const auto& ws = state.particles.weights();
    for (std::size_t p = 0; p < state.particles.size(); ++p) {
      const Vec rel = interpolate_field(u, xs[p]) - vs[p];
      j6 += ws[p] * dot(rel, interpolate_field(b, xs[p]));
    }
  }
  out.j[5] = sigma * j6;

  // J7: -sigma (mu + lambda) int (div u)(rho - rho_c)
  const ScalarField div_u = divergence_centered(u);
  double j7 = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) j7 += div_u[i] * delta[i];
  out.j[6] = -sigma * (params.mu + params.lambda) * j7 * vol;

  // J8: -sigma m_c' . int rho b
  Vec rho_b;
  for (std::size_t i = 0; i < grid.cells(); ++i) rho_b += rho[i] * b.at(i);
  rho_b *= vol;
  out.j[7] = -sigma * dot(mc_prime(state, params), rho_b);

  // J9: -sigma int rho (u - m_c) . B[div(rho u)]
  const VectorField b_div = workspace.bogovskii_div_form(state.fluid.momentum);
  double j9 = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i)
    j9 += rho[i] * dot(u.at(i) - aq.m_c, b_div.at(i));
  out.j[8] = -sigma * j9 * vol;

  double coupling = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i)
    coupling += rho[i] * dot(u.at(i) - aq.m_c, b.at(i));
  coupling *= vol;

  out.e_sigma = e_int - 2.0 * sigma * coupling;
  out.d_sigma = 0.0;
  for (double j : out.j) out.d_sigma += j;
  return out;
}

double bl_distance_bound(const SystemState& state) {
  const double f_c = state.particles.total_weight();
  Vec v_c;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p) v_c += ws[p] * vs[p];
  v_c *= 1.0 / f_c;
  double variance = 0.0;
  for (std::size_t p = 0; p < state.particles.size(); ++p)
    variance += ws[p] * norm2(vs[p] - v_c);
  return std::sqrt(variance) * std::sqrt(f_c);
}

FunctionalRow evaluate_row(const SystemState& state, const ModelParams& params,
                           const SpectralWorkspace& workspace) {
  FunctionalRow row;
  row.t = state.time;
  row.L = lyapunov_L(state, params);
  row.E_total = total_energy(state, params.gamma);
  row.E_int = interacting_energy(state, params);
  const PerturbedFunctionals pf =
      perturbed_functionals(state, params, params.sigma, workspace);
  row.D = pf.j[0];
  row.E_sigma = pf.e_sigma;
  row.D_sigma = pf.d_sigma;
  row.J = pf.j;
  row.bl_bound = bl_distance_bound(state);
  row.mass_fluid = state.fluid.rho.integral();
  row.mass_kinetic = state.particles.total_weight();

  Vec kinetic_momentum;
  const auto& vs = state.particles.velocities();
  const auto& ws = state.particles.weights();
  for (std::size_t p = 0; p < state.particles.size(); ++p) kinetic_momentum += ws[p] * vs[p];
  row.total_momentum = kinetic_momentum + state.fluid.momentum.integral();

  const AveragedQuantities aq = averaged_quantities(state, params);
  row.v_c = aq.v_c;
  row.m_c = aq.m_c;
  row.u_c = aq.u_c;

  row.rho_min = state.fluid.rho.min();
  row.rho_max = state.fluid.rho.max();
  row.u_max = derive_velocity(state.fluid, params).max_norm();

  if (!std::isfinite(row.L) || !std::isfinite(row.E_total) || !std::isfinite(row.D_sigma) ||
      !all_finite(row.total_momentum))
    throw std::runtime_error("evaluate_row: non-finite functional value");
  return row;
}

ConservationReport conservation_report(std::span<const FunctionalRow> history) {
  if (history.empty()) throw std::invalid_argument("conservation_report: empty history");
  ConservationReport report;
  const FunctionalRow& first = history.front();
  const double momentum_scale =
      std::max(norm(first.total_momentum),
               std::sqrt(std::max(first.E_total, 0.0) * (first.mass_fluid + first.mass_kinetic)));

  for (const FunctionalRow& row : history) {
    report.mass_fluid_drift =
        std::max(report.mass_fluid_drift,
                 std::abs(row.mass_fluid - first.mass_fluid) / std::abs(first.mass_fluid));
    report.mass_kinetic_drift =
        std::max(report.mass_kinetic_drift,
                 std::abs(row.mass_kinetic - first.mass_kinetic) / std::abs(first.mass_kinetic));
    if (momentum_scale > 0.0)
      report.momentum_drift =
          std::max(report.momentum_drift,
                   norm(row.total_momentum - first.total_momentum) / momentum_scale);
  }
  for (std::size_t k = 1; k < history.size(); ++k) {
    report.max_energy_step_increase = std::max(
        report.max_energy_step_increase, history[k].E_total - history[k - 1].E_total);
    report.max_e_sigma_step_increase = std::max(
        report.max_e_sigma_step_increase, history[k].E_sigma - history[k - 1].E_sigma);
  }
  report.max_energy_step_increase = std::max(0.0, report.max_energy_step_increase);
  report.max_e_sigma_step_increase = std::max(0.0, report.max_e_sigma_step_increase);
  return report;
}

DecayFit decay_fit(std::span<const double> t, std::span<const double> values,
                   double drop_fraction) {
  if (t.size() != values.size()) throw std::invalid_argument("decay_fit: length mismatch");
  if (t.empty()) throw std::domain_error("decay fit undefined: empty series");

  const double t_begin = t.front();
  const double t_end = t.back();
  const double window_begin = t_begin + drop_fraction * (t_end - t_begin);

  double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0, sum_yy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window_begin) continue;
    if (!(values[i] > 0.0))
      throw std::domain_error("decay fit undefined: non-positive value in window");
    const double y = std::log(values[i]);
    sum_t += t[i];
    sum_y += y;
    sum_tt += t[i] * t[i];
    sum_ty += t[i] * y;
    sum_yy += y * y;
    ++count;
  }
  if (count < 10) throw std::domain_error("decay fit undefined: fewer than 10 samples in window");

  const double n = static_cast<double>(count);
  const double var_t = sum_tt - sum_t * sum_t / n;
  const double var_y = sum_yy - sum_y * sum_y / n;
  const double cov = sum_ty - sum_t * sum_y / n;

  DecayFit fit;
  fit.window_begin = window_begin;
  fit.window_end = t_end;
  fit.samples = count;
  if (var_t <= 0.0) throw std::domain_error("decay fit undefined: degenerate time window");
  // a constant series has no defined rate or r^2; report 0 by convention
  if (var_y <= 1e-24 * std::max(1.0, sum_yy)) {
    fit.rate = 0.0;
    fit.r_squared = 0.0;
    return fit;
  }
  const double slope = cov / var_t;
  fit.rate = std::abs(slope);
  fit.r_squared = (cov * cov) / (var_t * var_y);
  return fit;
}

}  // namespace kinfluid
