// gsmf: data generation, solves, sweeps and diagnostics from a JSON config.
//
//   gsmf solve --config run.json [--out dir] [--seed s] [--audit]
//   gsmf sweep --config sweep.json --jobs 4
//   gsmf check --config run.json
//   gsmf gen-data --config run.json
//
// Exit codes: 0 converged / all checks passed, 2 iteration or time limit,
// 1 any error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "config.h"
#include "logging.h"
#include "runner.h"

int main(int argc, char** argv) {
  CLI::App app{"Generalized symmetric matrix factorization solver"};
  app.require_subcommand(1);

  std::string config_path;
  gsmf::cli::Overrides overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    cmd->add_option("--seed", seed, "Seed for dataset and starting point");
    cmd->add_flag("--symmetrize-noise", overrides.symmetrize_noise,
                  "Use (G + G^T)/2 for the dataset noise");
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_flag("--audit", overrides.audit,
                  "Keep iterate snapshots for the descent audit (small n)");
    cmd->add_flag("--no-timestamps", overrides.no_timestamps,
                  "Write elapsed times as 0 for byte-stable traces");
  };

  CLI::App* gen = app.add_subcommand("gen-data", "Write the target matrix as Matrix Market");
  add_common(gen);
  CLI::App* solve = app.add_subcommand("solve", "Run one solve; write trace.csv and summary.json");
  add_common(solve);
  add_run(solve);
  CLI::App* sweep = app.add_subcommand("sweep", "Run an alpha, lambda or noise/rank sweep");
  add_common(sweep);
  add_run(sweep);
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  CLI::App* check = app.add_subcommand("check", "Run the identity suite and diagnostics");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    gsmf::cli::RunConfig config = gsmf::cli::LoadConfig(config_path);
    if (!out_dir.empty()) overrides.out_dir = out_dir;
    if (app.got_subcommand(gen) ? gen->count("--seed")
        : app.got_subcommand(solve) ? solve->count("--seed")
        : app.got_subcommand(sweep) ? sweep->count("--seed")
                                    : check->count("--seed")) {
      overrides.seed = seed;
    }
    gsmf::cli::ApplyOverrides(config, overrides);
    if (app.got_subcommand(gen)) return gsmf::cli::GenDataCommand(config);
    if (app.got_subcommand(solve)) return gsmf::cli::SolveCommand(config);
    if (app.got_subcommand(sweep)) return gsmf::cli::SweepCommand(config, jobs);
    return gsmf::cli::CheckCommand(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
