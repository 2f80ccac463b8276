#include "kinfluid/run.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "kinfluid/fluid.hpp"
#include "kinfluid/parallel.hpp"
#include "kinfluid/scenario.hpp"

namespace kinfluid {

namespace {

/// E_sigma ~ L only holds for sigma small enough; flag the first breakdown
/// so an oversized sigma is visible without failing the run.
void check_sigma_positivity(const FunctionalRow& row, bool& warned) {
  if (warned || !(row.L > 0.0) || row.E_sigma > 0.0) return;
  std::cerr << "warning: E_sigma = " << row.E_sigma << " <= 0 while L = " << row.L
            << " at t = " << row.t << "; sigma is too large for this state\n";
  warned = true;
}

}  // namespace

RunHistory run_simulation(const RunConfig& config) {
  config.validate();
  set_deterministic_execution(config.deterministic);

  RunHistory history;
  history.config = config;

  const GridSpec grid = config.grid();
  const ModelParams params = config.model_params();
  const SpectralWorkspace workspace(grid);
  SystemState state = init_scenario(config);

  bool sigma_warned = false;
  history.rows.push_back(evaluate_row(state, params, workspace));
  check_sigma_positivity(history.rows.back(), sigma_warned);

  const double t_end = config.t_end;
  const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
  std::size_t step = 0;
  while (state.time < t_end - t_eps) {
    double dt = config.fixed_dt ? *config.fixed_dt
                                : stable_timestep(state.fluid, state.particles, params);
    dt = std::min(dt, t_end - state.time);
    try {
      state = coupled_step(state, params, workspace, dt);
    } catch (const InstabilityError& e) {
      history.aborted = true;
      history.abort_reason = e.what();
      break;
    }
    ++step;
    if (step % static_cast<std::size_t>(config.output_stride) == 0 ||
        state.time >= t_end - t_eps) {
      history.rows.push_back(evaluate_row(state, params, workspace));
      check_sigma_positivity(history.rows.back(), sigma_warned);
    }
  }

  std::vector<double> ts, ls;
  ts.reserve(history.rows.size());
  ls.reserve(history.rows.size());
  for (const auto& row : history.rows) {
    ts.push_back(row.t);
    ls.push_back(row.L);
  }
  try {
    history.fit = decay_fit(ts, ls);
  } catch (const std::domain_error&) {
    history.fit.reset();
  }
  history.report = conservation_report(history.rows);

  const FunctionalRow& last = history.rows.back();
  history.summary = RunSummary{state.time,   step,          state.particles.size(), last.L,
                               last.rho_min, last.rho_max,  last.u_max};
  return history;
}

}  // namespace kinfluid
