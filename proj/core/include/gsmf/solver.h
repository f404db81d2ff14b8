#ifndef GSMF_SOLVER_H_
#define GSMF_SOLVER_H_

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsmf/objective.h"
#include "gsmf/updates.h"

namespace gsmf {

enum class ReferenceMode {
  // R_{k+1} = (1 - p) R_k + p F_{k+1}.
  kAverage,
  // R_{k+1} = max of the last min(k+2, N+1) objective values.
  kMaxType,
};

struct LineSearchConfig {
  ReferenceMode mode = ReferenceMode::kAverage;
  // Constant weight p used when `p_schedule` is empty.
  double p_const = 0.2;
  double p_min = 0.1;
  // Optional p_{k+1} as a function of k; results must lie in [p_min, 1].
  std::function<double(int)> p_schedule;
  // N for the max-type reference value.
  int window = 3;
};

// How F_lambda(U, V) is evaluated inside the line search.
enum class ObjectiveEval {
  // Form the residual directly (O(n^2 r) for full vectorization, O(q r) for
  // sampling).
  kDirect,
  // Trace identities on r x r Gram products (full vectorization only; falls
  // back to kDirect otherwise). Loses absolute accuracy of order
  // eps * ||M||_F^2 to cancellation.
  kGramCached,
};

struct SolverConfig {
  UpdateScheme scheme = UpdateScheme::kHierarchicalProx;
  LineSearchConfig line_search;
  ObjectiveEval objective_eval = ObjectiveEval::kDirect;
  double mu_min = 1.0;
  double sigma_min = 1.0;
  double sigma_max0 = 1e6;
  double tau = 4.0;
  double c = 1e-4;
  // Warm-start factor for mu_k^0 and sigma_k^0.
  double warm_start = 0.1;
  double tol = 1e-12;
  int consec_required = 3;
  int max_iters = 100000;
  double max_time_sec = 1e30;
  std::uint64_t seed = 0;
  // Compute the stationarity residual for every trace row.
  bool trace_residual = true;
  // Keep iterate snapshots in the trace for DescentAudit (small n only).
  bool audit = false;

  // Throws ParameterError on inadmissible values.
  void Validate() const;
};

// Iterates (X^k, Y^k) and (X^{k+1}, Y^{k+1}) of one accepted step together
// with the quantities needed to re-check its acceptance and descent.
struct AuditSnapshot {
  Matrix x_prev, y_prev;
  Matrix x, y;
  double f_prev = 0.0;
  // R_k, the reference value the step was tested against.
  double ref_prev = 0.0;
  double mu_max = 0.0;
  // NaN when the sigma phase was not entered.
  double sigma_max = 0.0;
};

struct IterationRecord {
  int k = 0;
  double elapsed_sec = 0.0;
  double f_value = 0.0;
  double ref_value = 0.0;
  double relobj = 0.0;
  double sym_gap = 0.0;
  // NaN when SolverConfig::trace_residual is off.
  double stationarity_residual = 0.0;
  double mu_bar = 0.0;
  double sigma_bar = 0.0;
  int inner_iterations = 0;
  // InnerIterationBudget for this step. The runtime assertion also allows
  // SigmaPhaseBudget when that is larger.
  int inner_budget = 0;
  double step_norm = 0.0;
  std::optional<AuditSnapshot> audit;
};

struct SolverState {
  int k = 0;
  Matrix x, y;
  // Dense Z^k; only used when the map is not full vectorization.
  Matrix z;
  double f_value = 0.0;
  double ref_value = 0.0;
  double mu_bar = 0.0;
  double sigma_bar = 0.0;
  // Recent objective values, newest last (max-type mode).
  std::deque<double> f_history;
  int consec_small = 0;
  double elapsed_sec = 0.0;
};

enum class SolveStatus { kConverged, kIterLimit, kTimeLimit };
std::string ToString(SolveStatus status);

struct SolveResult {
  Matrix x, y;
  std::vector<IterationRecord> trace;
  SolveStatus status = SolveStatus::kIterLimit;
  double elapsed_sec = 0.0;
};

// Reference-value recursion.
//  * kAverage: (1 - p) R + p f_new; p must be in [p_min, 1].
//  * kMaxType: `history` gets f_new appended and is trimmed to the last
//    window + 1 values; returns their maximum.
double ReferenceValueUpdate(const LineSearchConfig& ls, double r,
                            double f_new, double p, std::deque<double>& history);

// Upper bound on inner iterations of one line search:
//   2 max{1, floor((log mu_max - log mu_min) / log tau + 2)} + 2.
int InnerIterationBudget(double mu_max, double mu_min, double tau);

// Bound that also covers the sigma phase, once sigma_max is known:
//   max{n_mu, n_sigma} + 1 with
//   n_mu = max{1, floor((log mu_max - log mu_min) / log tau + 2)},
//   n_sigma = floor((log sigma_max - log sigma_min) / log tau + 1).
// InnerIterationBudget alone can be too small when mu_max < mu_min and sigma
// has to grow from sigma_min to a large sigma_max.
int SigmaPhaseBudget(double mu_max, double mu_min, double sigma_max,
                     double sigma_min, double tau);

// The average-type nonmonotone alternating updating method (and its max-type
// variant). One instance is single-threaded and owns its state.
class Solver {
 public:
  Solver(ProblemSpec spec, RelaxationParams params, SolverConfig config);

  const ProblemSpec& spec() const { return spec_; }
  const RelaxationParams& params() const { return params_; }
  const SolverConfig& config() const { return config_; }

  // Uniform(0, 1) starting factors from config().seed.
  std::pair<Matrix, Matrix> RandomStart() const;

  // R_0 = F(X^0, Y^0). Throws ParameterError if that value is +inf.
  SolverState Initialize(Matrix x0, Matrix y0) const;

  // One outer iteration (Z-update, line search, commit). Throws
  // InvariantViolation if the line search exceeds its budget.
  IterationRecord Step(SolverState& state) const;

  SolveResult Solve(Matrix x0, Matrix y0) const;
  SolveResult Solve() const;

 private:
  ProblemSpec spec_;
  RelaxationParams params_;
  SolverConfig config_;
};

}  // namespace gsmf

#endif  // GSMF_SOLVER_H_
