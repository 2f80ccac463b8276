#include <benchmark/benchmark.h>

#include "kinfluid/config.hpp"
#include "kinfluid/diagnostics.hpp"
#include "kinfluid/scenario.hpp"

using namespace kinfluid;

namespace {

RunConfig bench_config(int dimension, int grid_n, int ppc) {
  RunConfig c;
  c.dimension = dimension;
  c.grid_n = grid_n;
  c.particles_per_cell = ppc;
  c.scenario = "perturbed";
  c.seed = 7;
  return c;
}

void BM_DepositMoments(benchmark::State& state) {
  const RunConfig c = bench_config(2, static_cast<int>(state.range(0)), 4);
  const SystemState s = init_scenario(c);
  const GridSpec grid = c.grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(deposit_moments(s.particles, grid, 1e-10));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(s.particles.size()));
}
BENCHMARK(BM_DepositMoments)->Arg(16)->Arg(32)->Arg(64);

void BM_PoissonSolve(benchmark::State& state) {
  GridSpec grid(2, static_cast<int>(state.range(0)));
  SpectralWorkspace ws(grid);
  ScalarField f(grid);
  for (std::size_t i = 0; i < grid.cells(); ++i)
    f[i] = std::sin(2.0 * std::numbers::pi * grid.cell_center(i)[0]);
  const ZeroMeanField zf(std::move(f));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ws.solve_poisson_periodic(zf));
  }
}
BENCHMARK(BM_PoissonSolve)->Arg(32)->Arg(64)->Arg(128);

void BM_CoupledStep(benchmark::State& state) {
  const RunConfig c = bench_config(2, static_cast<int>(state.range(0)), 4);
  const ModelParams params = c.model_params();
  const SpectralWorkspace ws(c.grid());
  SystemState s = init_scenario(c);
  const double dt = 1e-4;
  for (auto _ : state) {
    s = coupled_step(s, params, ws, dt);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(s.particles.size()));
}
BENCHMARK(BM_CoupledStep)->Arg(16)->Arg(32)->Arg(64);

void BM_DiagnosticsRow(benchmark::State& state) {
  const RunConfig c = bench_config(2, static_cast<int>(state.range(0)), 4);
  const ModelParams params = c.model_params();
  const SpectralWorkspace ws(c.grid());
  const SystemState s = init_scenario(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_row(s, params, ws));
  }
}
BENCHMARK(BM_DiagnosticsRow)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
