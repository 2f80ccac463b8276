#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "kinfluid/grid.hpp"
#include "kinfluid/params.hpp"
#include "kinfluid/vec.hpp"

namespace kinfluid {

/// Configuration failure; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scenario construction knobs. Every field has a default and every field is
/// echoed back in run outputs.
struct ScenarioParams {
  double rho_c = 1.0;  // mean fluid density
  double f_c = 1.0;    // total kinetic mass
  Vec gap{1.0, 0.0, 0.0};  // homogeneous_relaxation: initial u0 - v0
  double spread_a = 0.5;   // two_temperature: half-gap between velocity lattices
  Vec lattice_mean;        // two_temperature: common mean velocity
  double epsilon = 0.02;          // perturbed: density perturbation amplitude
  double velocity_spread = 0.05;  // perturbed: thermal velocity spread
  Vec velocity_mean{0.05, 0.0, 0.0};  // perturbed: mean particle drift
  double e0_cap = 4.0;  // perturbed: cap on the discrete initial total energy

  bool operator==(const ScenarioParams&) const = default;
};

/// Full description of one run; loadable from JSON and echoed verbatim
/// (defaults included) so any output can reproduce its run.
struct RunConfig {
  int dimension = 2;
  int grid_n = 32;
  int particles_per_cell = 4;
  double gamma = 2.0;
  double mu = 0.05;
  double lambda = 0.0;
  double sigma = 0.05;
  std::string collision = "none";  // none | local_alignment | nonlocal_alignment
  std::string kernel_kind = "constant";  // constant | cosine_bump
  double kernel_constant = 1.0;
  double kernel_amplitude = 1.0;
  double kernel_base = 0.1;
  double cfl = 0.5;
  std::optional<double> fixed_dt;  // overrides stable_timestep when set
  double t_end = 2.0;
  int output_stride = 10;  // steps between diagnostic rows
  std::string scenario = "perturbed";
  ScenarioParams scenario_params;
  std::uint64_t seed = 12345;
  bool deterministic = false;
  std::string output_path;  // output file stem; scenario name when empty
  double rho_floor = 1e-10;
  double rho_f_floor = 1e-10;

  bool operator==(const RunConfig&) const = default;

  GridSpec grid() const { return GridSpec(dimension, grid_n); }

  /// Converts to solver parameters; throws ConfigError on violation.
  ModelParams model_params() const;

  /// Checks every constraint, naming the violated field.
  void validate() const;

  std::string output_stem() const { return output_path.empty() ? scenario : output_path; }
};

/// Parse and validate a config from JSON text; unknown keys are rejected.
RunConfig parse_config(const std::string& json_text);

/// Load from a file; errors mention the path.
RunConfig load_config(const std::filesystem::path& path);

/// Complete JSON echo of the effective configuration, defaults included.
/// parse_config(config_echo_json(c)) reproduces c exactly.
std::string config_echo_json(const RunConfig& config);

}  // namespace kinfluid
