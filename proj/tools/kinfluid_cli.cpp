// kinfluid command-line driver.
//
//   kinfluid run <config.json> [--out DIR] [--format csv|json] [--seed N]
//                [--deterministic]
//
// Exit codes: 0 success, 2 configuration error, 3 instability abort.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kinfluid/config.hpp"
#include "kinfluid/run.hpp"
#include "kinfluid/timeseries.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitInstability = 3;

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& format, bool seed_given, std::uint64_t seed,
                bool deterministic) {
  namespace fs = std::filesystem;
  kinfluid::RunConfig config;
  try {
    config = kinfluid::load_config(config_path);
  } catch (const kinfluid::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (seed_given) config.seed = seed;
  if (deterministic) config.deterministic = true;

  kinfluid::RunHistory history;
  try {
    history = kinfluid::run_simulation(config);
  } catch (const kinfluid::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string stem = config.output_stem();
  const fs::path data_path = dir / (stem + (format == "json" ? ".json" : ".csv"));
  if (format == "json") {
    kinfluid::write_timeseries_json(history, data_path);
  } else {
    kinfluid::write_timeseries_csv(history, data_path);
    // companion echo so every CSV run can be reproduced
    const fs::path echo_path = dir / (stem + "_config.json");
    std::ofstream echo(echo_path);
    echo << kinfluid::config_echo_json(config);
  }

  const auto& rows = history.rows;
  std::cout << "scenario " << config.scenario << ": " << history.summary.steps << " steps to t="
            << history.summary.t_final << ", " << rows.size() << " rows -> " << data_path.string()
            << "\n";
  std::cout << "  L: " << rows.front().L << " -> " << rows.back().L;
  if (history.fit)
    std::cout << "  (decay rate " << history.fit->rate << ", r^2 " << history.fit->r_squared
              << ")";
  std::cout << "\n";
  std::cout << "  drifts: fluid mass " << history.report.mass_fluid_drift << ", kinetic mass "
            << history.report.mass_kinetic_drift << ", momentum " << history.report.momentum_drift
            << "\n";

  if (history.aborted) {
    std::cerr << "instability abort: " << history.abort_reason << "\n";
    return kExitInstability;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vlasov / compressible Navier-Stokes simulator on the unit torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool deterministic = false;

  CLI::App* run = app.add_subcommand("run", "run a simulation from a JSON config");
  run->add_option("config", config_path, "path to config.json")->required();
  run->add_option("--out", out_dir, "output directory (default .)");
  run->add_option("--format", format, "timeseries format")
      ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_flag("--deterministic", deterministic, "force single-threaded deterministic loops");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  return run_command(config_path, out_dir, format, seed_opt->count() > 0, seed, deterministic);
}
