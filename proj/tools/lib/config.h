#ifndef GSMF_TOOLS_CONFIG_H_
#define GSMF_TOOLS_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dataset.h"
#include "gsmf/objective.h"
#include "gsmf/solver.h"
#include "json.hpp"

namespace gsmf::cli {

struct RegularizerSpec {
  std::string kind = "nonneg";
  double weight = 0.0;
};

struct MapSpec {
  bool sampling = false;
  // Two-column CSV of 1-based (row, col) pairs; sampling only.
  std::filesystem::path omega;
};

struct SweepSpec {
  enum class Axis { kAlpha, kLambda, kNoiseRank };
  Axis axis = Axis::kAlpha;
  std::vector<double> values;
  // kNoiseRank only: the grid is noise_t x rank.
  std::vector<double> noise_t;
  std::vector<int> rank;
  int reps = 1;
};

// Everything a run needs. Relative paths are resolved against the directory
// of the config file.
struct RunConfig {
  DatasetRecipe dataset;
  int rank = 0;
  double lambda = 1.0;
  RegularizerSpec psi;
  RegularizerSpec phi;
  MapSpec map;
  double alpha = 0.6;
  std::optional<double> beta;
  std::optional<double> gamma;
  SolverConfig solver;
  std::filesystem::path out_dir = "gsmf_out";
  // When false, elapsed times are written as 0 so traces are byte-stable.
  bool timestamps = true;
  std::optional<SweepSpec> sweep;
};

// Throws ConfigurationError naming the offending field path
// (e.g. "problem.rank").
RunConfig ParseConfig(const nlohmann::json& doc,
                      const std::filesystem::path& base_dir = {});
RunConfig LoadConfig(const std::filesystem::path& path);

// Round-trips through ParseConfig.
nlohmann::json ToJson(const RunConfig& config);

// Construction can throw ParameterError (inadmissible alpha/beta/gamma,
// malformed Omega).
RelaxationParams MakeParams(const RunConfig& config);
ProblemSpec MakeProblem(const RunConfig& config, const Matrix& target);

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_CONFIG_H_
