#pragma once

#include <filesystem>
#include <string>

#include "kinfluid/run.hpp"

namespace kinfluid {

/// Exact CSV header for a given dimension:
/// t,mass_fluid,mass_kinetic,momentum_0..,vc_0..,mc_0..,uc_0..,E_total,L,
/// E_int,D,E_sigma,D_sigma,J1..J9,bl_bound,rho_min,rho_max,u_max
std::string csv_header(int dimension);

/// Time series as CSV text; floating values carry 17 significant digits.
std::string timeseries_csv(const RunHistory& history);

/// Full run record as JSON: config echo, rows, decay fit, conservation
/// report, summary, abort status. Same 17-significant-digit serialization,
/// so a written history parses back bit-exactly.
std::string timeseries_json(const RunHistory& history);

void write_timeseries_csv(const RunHistory& history, const std::filesystem::path& path);
void write_timeseries_json(const RunHistory& history, const std::filesystem::path& path);

}  // namespace kinfluid
