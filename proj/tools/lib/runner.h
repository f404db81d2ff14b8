#ifndef GSMF_TOOLS_RUNNER_H_
#define GSMF_TOOLS_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "config.h"
#include "gsmf/solver.h"
#include "json.hpp"

namespace gsmf::cli {

// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::filesystem::path> out_dir;
  // Replaces both dataset.seed and solver.seed.
  std::optional<std::uint64_t> seed;
  bool audit = false;
  bool symmetrize_noise = false;
  bool no_timestamps = false;
};

void ApplyOverrides(RunConfig& config, const Overrides& overrides);

// 0 for Converged, 2 for the limit statuses.
int ExitCode(SolveStatus status);

struct RunOutcome {
  SolveResult result;
  nlohmann::json summary;
};

// Builds the problem for `target`, solves from the seeded uniform start and
// summarizes the final state. The summary values are those of the last
// trace row (or of the starting point when the trace is empty).
RunOutcome ExecuteRun(const RunConfig& config, const Matrix& target);

inline constexpr const char* kTraceHeader =
    "iter,elapsed_sec,f_value,ref_value,relobj,sym_gap,residual,mu_bar,"
    "sigma_bar,inner_iters";

void WriteTrace(std::ostream& out, const std::vector<IterationRecord>& trace,
                bool timestamps);

// Subcommands. Each writes into config.out_dir and returns the exit code;
// errors propagate as exceptions.
int GenDataCommand(const RunConfig& config);
int SolveCommand(const RunConfig& config);
int SweepCommand(const RunConfig& config, int jobs);
int CheckCommand(const RunConfig& config);

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_RUNNER_H_
