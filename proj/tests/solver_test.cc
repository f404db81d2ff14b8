#include <gtest/gtest.h>

#include <limits>

#include "gsmf/diagnostics.h"
#include "gsmf/errors.h"
#include "gsmf/random.h"
#include "gsmf/solver.h"

namespace gsmf {
namespace {

TEST(ReferenceValue, Average) {
  LineSearchConfig ls;
  std::deque<double> history;
  EXPECT_DOUBLE_EQ(ReferenceValueUpdate(ls, 10, 8, 0.2, history), 9.6);
  EXPECT_DOUBLE_EQ(ReferenceValueUpdate(ls, 10, 8, 1.0, history), 8.0);
  EXPECT_THROW(ReferenceValueUpdate(ls, 10, 8, 0.05, history), ParameterError);
}

TEST(ReferenceValue, MaxTypeWindow) {
  LineSearchConfig ls;
  ls.mode = ReferenceMode::kMaxType;
  ls.window = 3;
  std::deque<double> history = {5, 7, 6, 4};
  EXPECT_DOUBLE_EQ(ReferenceValueUpdate(ls, 0, 4, 0.2, history), 7.0);
  EXPECT_EQ(history.size(), 4u);
  EXPECT_DOUBLE_EQ(ReferenceValueUpdate(ls, 0, 3, 0.2, history), 6.0);
}

TEST(InnerBudget, Formula) {
  EXPECT_EQ(InnerIterationBudget(1.0, 1.0, 4.0), 6);
  EXPECT_EQ(InnerIterationBudget(100.0, 1.0, 4.0), 12);
  EXPECT_EQ(InnerIterationBudget(0.5, 1.0, 4.0), 4);
}

TEST(InnerBudget, SigmaPhase) {
  EXPECT_EQ(SigmaPhaseBudget(100.0, 1.0, 1.0, 1.0, 4.0), 6);
  // mu_max below mu_min: the sigma phase dominates.
  EXPECT_EQ(SigmaPhaseBudget(0.0348, 1.0, 2262.31, 1.0, 4.0), 7);
  EXPECT_EQ(SigmaPhaseBudget(0.0348, 1.0, 0.5, 1.0, 4.0), 2);
}

// Y collapses early, so mu_max drops below mu_min and sigma has to climb to
// sigma_max. Some steps exceed the mu-only budget without being faulty.
TEST(Solver, SigmaPhaseDominatedLineSearch) {
  Rng rng(1);
  const Matrix f = rng.UniformMatrix(100, 100);
  Matrix m = f.transpose() * f;
  m /= m.maxCoeff();
  SolverConfig cfg;
  cfg.scheme = UpdateScheme::kProxLinear;
  cfg.max_iters = 100;
  cfg.tol = 1e-300;
  cfg.trace_residual = false;
  const Solver solver(ProblemSpec::Snmf(m, 20, 1.0), RelaxationParams::FromAlpha(0.6), cfg);
  SolveResult res;
  ASSERT_NO_THROW(res = solver.Solve());
  int over = 0;
  for (const IterationRecord& rec : res.trace) over += rec.inner_iterations > rec.inner_budget;
  EXPECT_GT(over, 0);
  EXPECT_EQ(res.trace.size(), 100u);
}

TEST(SolverConfig, RejectsBadValues) {
  SolverConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.tau = 1.0;
  EXPECT_THROW(c.Validate(), ParameterError);
  c = SolverConfig{};
  c.c = 0.0;
  EXPECT_THROW(c.Validate(), ParameterError);
  c = SolverConfig{};
  c.line_search.p_min = 0.0;
  EXPECT_THROW(c.Validate(), ParameterError);
}

Matrix Planted(int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  return rng.UniformMatrix(n, r);
}

TEST(Solver, StationaryStartAcceptsFirstCandidate) {
  const Matrix xbar = Planted(8, 2, 1);
  LinearMap map = LinearMap::FullVectorization(8);
  Vector b = map.Apply(xbar * xbar.transpose());
  const ProblemSpec spec(std::move(map), std::move(b), MakeZero(), MakeZero(), 1.0, 2);
  SolverConfig cfg;
  cfg.scheme = UpdateScheme::kProxLinear;
  const Solver solver(spec, RelaxationParams::FromAlpha(0.6), cfg);
  SolverState state = solver.Initialize(xbar, xbar);
  const IterationRecord rec = solver.Step(state);
  EXPECT_EQ(rec.inner_iterations, 1);
  EXPECT_NEAR(rec.f_value, 0.0, 1e-28);
  EXPECT_LE((state.x - xbar).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Solver, PlantedRecoveryNearStart) {
  const Matrix xbar = Planted(20, 3, 2);
  const ProblemSpec spec = ProblemSpec::Snmf(xbar * xbar.transpose(), 3, 1.0);
  Rng rng(3);
  const Matrix x0 = (xbar + 0.05 * rng.UniformMatrix(20, 3)).eval();
  const Solver solver(spec, RelaxationParams::FromAlpha(0.6), SolverConfig{});
  const SolveResult res = solver.Solve(x0, x0);
  EXPECT_EQ(res.status, SolveStatus::kConverged);
  EXPECT_LE(res.trace.back().relobj, 1e-6);
}

TEST(Solver, PlantedRecoveryWithoutPenalty) {
  const Matrix xbar = Planted(20, 3, 4);
  const ProblemSpec spec = ProblemSpec::Snmf(xbar * xbar.transpose(), 3, 0.0);
  SolverConfig cfg;
  cfg.seed = 5;
  const Solver solver(spec, RelaxationParams::FromAlpha(0.6), cfg);
  const SolveResult res = solver.Solve();
  EXPECT_EQ(res.status, SolveStatus::kConverged);
  EXPECT_LE(res.trace.back().relobj, 1e-6);
}

TEST(Solver, InfiniteToleranceStopsAfterConsecutiveCount) {
  const Matrix xbar = Planted(10, 2, 6);
  const ProblemSpec spec = ProblemSpec::Snmf(xbar * xbar.transpose(), 2, 1.0);
  SolverConfig cfg;
  cfg.tol = std::numeric_limits<double>::infinity();
  const SolveResult res = Solver(spec, RelaxationParams::FromAlpha(0.6), cfg).Solve();
  EXPECT_EQ(res.status, SolveStatus::kConverged);
  EXPECT_EQ(static_cast<int>(res.trace.size()), cfg.consec_required);
}

TEST(Solver, LimitsReported) {
  const Matrix xbar = Planted(10, 2, 7);
  const ProblemSpec spec = ProblemSpec::Snmf(xbar * xbar.transpose(), 2, 1.0);
  SolverConfig cfg;
  cfg.max_iters = 5;
  EXPECT_EQ(Solver(spec, RelaxationParams::FromAlpha(0.6), cfg).Solve().status,
            SolveStatus::kIterLimit);
  cfg.max_iters = 100000;
  cfg.max_time_sec = 0.0;
  const SolveResult res = Solver(spec, RelaxationParams::FromAlpha(0.6), cfg).Solve();
  EXPECT_EQ(res.status, SolveStatus::kTimeLimit);
  EXPECT_LE(res.trace.size(), 1u);
  EXPECT_EQ(ToString(SolveStatus::kTimeLimit), "TimeLimit");
}

TEST(Solver, InfeasibleStartThrows) {
  const ProblemSpec spec = ProblemSpec::Snmf(Matrix::Identity(3, 3), 1, 1.0);
  const Solver solver(spec, RelaxationParams::FromAlpha(0.6), SolverConfig{});
  const Matrix bad = (Matrix(3, 1) << -1, 0, 0).finished();
  EXPECT_THROW(solver.Initialize(bad, bad), ParameterError);
}

TEST(Solver, MonotoneReferenceAndBudget) {
  Rng rng(8);
  const Matrix m = rng.UniformMatrix(20, 20);
  for (UpdateScheme scheme : {UpdateScheme::kProxLinear, UpdateScheme::kHierarchicalProx}) {
    SolverConfig cfg;
    cfg.scheme = scheme;
    cfg.max_iters = 100;
    cfg.tol = 1e-300;
    const ProblemSpec spec = ProblemSpec::Snmf(m + m.transpose(), 3, 1.0);
    const Solver solver(spec, RelaxationParams::FromAlpha(0.6), cfg);
    auto [x0, y0] = solver.RandomStart();
    double r_prev = FLambda(spec, x0, y0).value();
    for (const IterationRecord& rec : solver.Solve(x0, y0).trace) {
      EXPECT_LE(rec.ref_value, r_prev * (1 + 1e-14));
      EXPECT_LE(rec.f_value, rec.ref_value * (1 + 1e-14));
      EXPECT_LE(rec.inner_iterations, rec.inner_budget);
      r_prev = rec.ref_value;
    }
  }
}

TEST(Solver, MaxTypeAndGramVariantsConverge) {
  const Matrix xbar = Planted(15, 3, 9);
  const ProblemSpec spec = ProblemSpec::Snmf(xbar * xbar.transpose(), 3, 1.0);
  SolverConfig cfg;
  cfg.seed = 10;
  cfg.line_search.mode = ReferenceMode::kMaxType;
  const SolveResult a = Solver(spec, RelaxationParams::FromAlpha(0.6), cfg).Solve();
  EXPECT_EQ(a.status, SolveStatus::kConverged);
  EXPECT_LE(a.trace.back().relobj, 1e-5);
  cfg.line_search.mode = ReferenceMode::kAverage;
  cfg.objective_eval = ObjectiveEval::kGramCached;
  const SolveResult b = Solver(spec, RelaxationParams::FromAlpha(0.6), cfg).Solve();
  EXPECT_EQ(b.status, SolveStatus::kConverged);
  EXPECT_LE(b.trace.back().relobj, 1e-5);
}

TEST(Solver, SamplingMapDecreasesObjective) {
  Rng rng(11);
  const Matrix xbar = rng.UniformMatrix(12, 2);
  std::vector<IndexPair> omega;
  for (int j = 1; j <= 12; ++j) {
    for (int i = 1; i <= 12; ++i) {
      if ((i + j) % 3 != 0) omega.push_back({i, j});
    }
  }
  LinearMap map = LinearMap::SymmetricSampling(12, omega);
  Vector b = map.Apply(xbar * xbar.transpose());
  const ProblemSpec spec(std::move(map), std::move(b), MakeNonnegIndicator(),
                         MakeNonnegIndicator(), 1.0, 2);
  SolverConfig cfg;
  cfg.seed = 12;
  cfg.audit = true;
  cfg.max_iters = 300;
  const RelaxationParams p = RelaxationParams::FromAlpha(2.0);
  const Solver solver(spec, p, cfg);
  const SolveResult res = solver.Solve();
  EXPECT_LT(res.trace.back().relobj, 1e-2);
  EXPECT_EQ(DescentAudit(res.trace, spec, p, cfg), 0);
}

TEST(Solver, DeterministicApartFromTiming) {
  Rng rng(13);
  const Matrix m = rng.UniformMatrix(15, 15);
  const ProblemSpec spec = ProblemSpec::Snmf(m * m.transpose(), 3, 1.0);
  SolverConfig cfg;
  cfg.seed = 14;
  cfg.max_iters = 200;
  const Solver solver(spec, RelaxationParams::FromAlpha(0.6), cfg);
  const SolveResult a = solver.Solve(), b = solver.Solve();
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].f_value, b.trace[i].f_value);
    EXPECT_EQ(a.trace[i].ref_value, b.trace[i].ref_value);
    EXPECT_EQ(a.trace[i].mu_bar, b.trace[i].mu_bar);
    EXPECT_EQ(a.trace[i].sigma_bar, b.trace[i].sigma_bar);
  }
  EXPECT_EQ(a.x, b.x);
}

}  // namespace
}  // namespace gsmf
