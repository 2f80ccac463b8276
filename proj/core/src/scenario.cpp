#include "kinfluid/scenario.hpp"

#include <cmath>
#include <numbers>

#include "kinfluid/diagnostics.hpp"
#include "kinfluid/random.hpp"

namespace kinfluid {

namespace {

/// Uniform particle lattice with per-axis count m and fractional offset
/// (same in every axis). Any rigid uniform lattice deposits an exactly
/// constant density, which keeps the relaxation scenarios on the
/// closed-form ODEs.
std::vector<Vec> lattice_positions(int dim, int per_axis, double offset) {
  const double spacing = 1.0 / per_axis;
  std::vector<Vec> out;
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(per_axis);
  out.reserve(total);
  std::array<int, 3> idx{0, 0, 0};
  const int e0 = per_axis, e1 = dim > 1 ? per_axis : 1, e2 = dim > 2 ? per_axis : 1;
  for (idx[0] = 0; idx[0] < e0; ++idx[0])
    for (idx[1] = 0; idx[1] < e1; ++idx[1])
      for (idx[2] = 0; idx[2] < e2; ++idx[2]) {
        Vec x;
        for (int a = 0; a < dim; ++a) x[a] = wrap_unit((idx[a] + 0.5 + offset) * spacing);
        out.push_back(x);
      }
  return out;
}

FluidState uniform_fluid(const GridSpec& grid, double rho_c, const Vec& u) {
  ScalarField rho(grid, rho_c);
  VectorField momentum(grid);
  for (std::size_t i = 0; i < grid.cells(); ++i)
    for (int a = 0; a < grid.dim(); ++a) momentum.comp(a)[i] = rho_c * u[a];
  return FluidState(std::move(rho), std::move(momentum));
}

std::vector<double> equal_weights(std::size_t count, double total_mass) {
  return std::vector<double>(count, total_mass / static_cast<double>(count));
}

}  // namespace

int lattice_multiplier(int particles_per_cell, int dimension, int groups) {
  const double per_group = static_cast<double>(particles_per_cell) / groups;
  const double root = std::pow(std::max(per_group, 1.0), 1.0 / dimension);
  return std::max(1, static_cast<int>(std::lround(root)));
}

SystemState init_scenario(const RunConfig& config) {
  config.validate();
  const GridSpec grid = config.grid();
  const int dim = config.dimension;
  const ScenarioParams& sp = config.scenario_params;

  if (config.scenario == "equilibrium") {
    const int k = lattice_multiplier(config.particles_per_cell, dim);
    auto positions = lattice_positions(dim, k * grid.n(), 0.0);
    const std::size_t count = positions.size();
    ParticleEnsemble particles(dim, std::move(positions), std::vector<Vec>(count),
                               equal_weights(count, sp.f_c));
    return SystemState{uniform_fluid(grid, sp.rho_c, Vec{}), std::move(particles), 0.0};
  }

  if (config.scenario == "homogeneous_relaxation") {
    // particles at rest, fluid moving at the gap velocity: u0 - v0 = gap
    const int k = lattice_multiplier(config.particles_per_cell, dim);
    auto positions = lattice_positions(dim, k * grid.n(), 0.0);
    const std::size_t count = positions.size();
    ParticleEnsemble particles(dim, std::move(positions), std::vector<Vec>(count),
                               equal_weights(count, sp.f_c));
    return SystemState{uniform_fluid(grid, sp.rho_c, sp.gap), std::move(particles), 0.0};
  }

  if (config.scenario == "two_temperature") {
    const int k = lattice_multiplier(config.particles_per_cell, dim, 2);
    auto fast = lattice_positions(dim, k * grid.n(), 0.0);
    auto slow = lattice_positions(dim, k * grid.n(), 0.5);
    const std::size_t per_group = fast.size();
    Vec v_fast = sp.lattice_mean;
    Vec v_slow = sp.lattice_mean;
    v_fast[0] += sp.spread_a;
    v_slow[0] -= sp.spread_a;
    std::vector<Vec> positions;
    positions.reserve(2 * per_group);
    positions.insert(positions.end(), fast.begin(), fast.end());
    positions.insert(positions.end(), slow.begin(), slow.end());
    std::vector<Vec> velocities(2 * per_group);
    for (std::size_t p = 0; p < per_group; ++p) velocities[p] = v_fast;
    for (std::size_t p = per_group; p < 2 * per_group; ++p) velocities[p] = v_slow;
    ParticleEnsemble particles(dim, std::move(positions), std::move(velocities),
                               equal_weights(2 * per_group, sp.f_c));
    return SystemState{uniform_fluid(grid, sp.rho_c, sp.lattice_mean), std::move(particles), 0.0};
  }

  if (config.scenario == "perturbed") {
    ScalarField rho(grid);
    for (std::size_t i = 0; i < grid.cells(); ++i) {
      const auto idx = grid.unravel(i);
      rho[i] = sp.rho_c *
               (1.0 + sp.epsilon * std::sin(2.0 * std::numbers::pi * grid.center(idx[0])));
    }
    FluidState fluid(std::move(rho), VectorField(grid));

    const std::size_t count =
        static_cast<std::size_t>(config.particles_per_cell) * grid.cells();
    Rng rng(config.seed);
    std::vector<Vec> positions(count), velocities(count);
    for (std::size_t p = 0; p < count; ++p)
      for (int a = 0; a < dim; ++a) positions[p][a] = rng.uniform();
    for (std::size_t p = 0; p < count; ++p)
      for (int a = 0; a < dim; ++a)
        velocities[p][a] = sp.velocity_mean[a] + sp.velocity_spread * rng.normal();
    ParticleEnsemble particles(dim, std::move(positions), std::move(velocities),
                               equal_weights(count, sp.f_c));

    SystemState state{std::move(fluid), std::move(particles), 0.0};
    const double e0 = total_energy(state, config.gamma);
    if (e0 > sp.e0_cap)
      throw ConfigError("config field 'scenario_params.e0_cap': initial total energy " +
                        std::to_string(e0) + " exceeds the cap; reduce epsilon or "
                        "velocity_spread, or raise e0_cap");
    return state;
  }

  throw ConfigError("config field 'scenario': unknown scenario '" + config.scenario + "'");
}

}  // namespace kinfluid
