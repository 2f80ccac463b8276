#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinfluid/config.hpp"
#include "kinfluid/diagnostics.hpp"

namespace kinfluid {

struct RunSummary {
  double t_final = 0.0;
  std::size_t steps = 0;
  std::size_t particle_count = 0;
  double L_final = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double u_max = 0.0;
};

/// Config echo, time series, and end-of-run analysis of one simulation.
struct RunHistory {
  RunConfig config;
  std::vector<FunctionalRow> rows;
  std::optional<DecayFit> fit;  // empty when L is not a positive decaying series
  ConservationReport report;
  RunSummary summary;
  bool aborted = false;
  std::string abort_reason;
};

/// Step from t = 0 to t_end with stable_timestep (or config.fixed_dt),
/// emitting a diagnostics row every output_stride steps. An instability
/// abort keeps the partial history and sets aborted/abort_reason.
RunHistory run_simulation(const RunConfig& config);

}  // namespace kinfluid
