#include "gsmf/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "gsmf/diagnostics.h"
#include "gsmf/errors.h"
#include "gsmf/linalg.h"
#include "gsmf/random.h"

namespace gsmf {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}


// Rounding level of a computed F value. Each residual entry carries an error
// of order eps |b_i|, so F is known to about eps (|F| + ||b|| sqrt(2F)), and
// to (eps ||b||)^2 at an exact fit. Without this allowance a candidate that
// equals the iterate up to rounding is rejected forever.
double EvaluationNoise(double f, double norm_b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double af = std::abs(f);
  return 16.0 * eps * (af + norm_b * std::sqrt(2.0 * af)) +
         16.0 * (eps * norm_b) * (eps * norm_b);
}

}  // namespace

void SolverConfig::Validate() const {
  auto fail = [](const std::string& what) { throw ParameterError(what); };
  if (!(mu_min > 0.0)) fail("mu_min must be > 0");
  if (!(sigma_min > 0.0 && sigma_min < sigma_max0 && std::isfinite(sigma_max0))) {
    fail("need 0 < sigma_min < sigma_max0 < inf");
  }
  if (!(tau > 1.0)) fail("tau must be > 1");
  if (!(c > 0.0)) fail("c must be > 0");
  if (!(warm_start > 0.0)) fail("warm_start must be > 0");
  if (line_search.mode == ReferenceMode::kAverage) {
    if (!(line_search.p_min > 0.0 && line_search.p_min < 1.0)) {
      fail("p_min must lie in (0, 1)");
    }
    if (!line_search.p_schedule && !(line_search.p_const >= line_search.p_min &&
                                     line_search.p_const <= 1.0)) {
      fail("p must lie in [p_min, 1]");
    }
  } else if (line_search.window < 1) {
    fail("max-type window N must be >= 1");
  }
  if (!(tol > 0.0)) fail("tol must be > 0");
  if (consec_required < 1) fail("consec_required must be >= 1");
  if (max_iters < 0) fail("max_iters must be >= 0");
  if (!(max_time_sec >= 0.0)) fail("max_time_sec must be >= 0");
}

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "Converged";
    case SolveStatus::kIterLimit:
      return "IterLimit";
    case SolveStatus::kTimeLimit:
      return "TimeLimit";
  }
  return "Unknown";
}

double ReferenceValueUpdate(const LineSearchConfig& ls, double r,
                            double f_new, double p,
                            std::deque<double>& history) {
  if (ls.mode == ReferenceMode::kAverage) {
    if (!(p >= ls.p_min && p <= 1.0)) {
      std::ostringstream msg;
      msg << "reference weight p = " << p << " outside [" << ls.p_min
          << ", 1]";
      throw ParameterError(msg.str());
    }
    return (1.0 - p) * r + p * f_new;
  }
  history.push_back(f_new);
  while (static_cast<int>(history.size()) > ls.window + 1) history.pop_front();
  return *std::max_element(history.begin(), history.end());
}

int InnerIterationBudget(double mu_max, double mu_min, double tau) {
  const double phase =
      std::floor((std::log(mu_max) - std::log(mu_min)) / std::log(tau) + 2.0);
  return 2 * static_cast<int>(std::max(1.0, phase)) + 2;
}

int SigmaPhaseBudget(double mu_max, double mu_min, double sigma_max,
                     double sigma_min, double tau) {
  const double log_tau = std::log(tau);
  const double n_mu = std::max(
      1.0, std::floor((std::log(mu_max) - std::log(mu_min)) / log_tau + 2.0));
  const double n_sigma = std::max(
      0.0,
      std::floor((std::log(sigma_max) - std::log(sigma_min)) / log_tau + 1.0));
  return static_cast<int>(std::max(n_mu, n_sigma)) + 1;
}

Solver::Solver(ProblemSpec spec, RelaxationParams params, SolverConfig config)
    : spec_(std::move(spec)), params_(params), config_(std::move(config)) {
  config_.Validate();
  ValidateScheme(config_.scheme, spec_);
}

std::pair<Matrix, Matrix> Solver::RandomStart() const {
  Rng rng(config_.seed);
  Matrix x = rng.UniformMatrix(spec_.n(), spec_.rank());
  Matrix y = rng.UniformMatrix(spec_.n(), spec_.rank());
  return {std::move(x), std::move(y)};
}

SolverState Solver::Initialize(Matrix x0, Matrix y0) const {
  RequireShape(x0, spec_.n(), spec_.rank(), "X^0");
  RequireShape(y0, spec_.n(), spec_.rank(), "Y^0");
  const ExtendedReal f0 = FLambda(spec_, x0, y0);
  if (f0.is_infinite()) {
    throw ParameterError("infeasible start: F_lambda(X^0, Y^0) = +inf");
  }
  SolverState state;
  state.x = std::move(x0);
  state.y = std::move(y0);
  state.f_value = f0.value();
  state.ref_value = f0.value();
  state.f_history.push_back(f0.value());
  state.mu_bar = config_.mu_min;
  state.sigma_bar = config_.sigma_min;
  return state;
}

IterationRecord Solver::Step(SolverState& state) const {
  const auto start = Clock::now();
  const Matrix& xk = state.x;
  const Matrix& yk = state.y;
  const double c = config_.c;
  const double tau = config_.tau;
  const double curvature = params_.curvature();
  const bool full_vec = spec_.map().is_full_vectorization();
  const bool gram_eval =
      full_vec && config_.objective_eval == ObjectiveEval::kGramCached;

  // Step 1: Z^k (implicit for full vectorization).
  const AuxiliaryView z =
      AuxiliaryView::ForIterate(spec_, params_, xk, yk, state.z);
  const Matrix zy = z.Times(yk);
  const Matrix yty = yk.transpose() * yk;

  // Step 2: line search on (mu, sigma).
  const double mu_max = curvature * SpectralNormSquaredFromGram(yty) + c;
  double mu = std::max(config_.warm_start * state.mu_bar, config_.mu_min);
  double sigma =
      std::min(std::max(config_.warm_start * state.sigma_bar, config_.sigma_min),
               config_.sigma_max0);
  double sigma_max = std::numeric_limits<double>::quiet_NaN();
  const int budget = InnerIterationBudget(mu_max, config_.mu_min, tau);
  int limit = budget;

  const double a = 1.0 - params_.z_weight();
  const double zc = params_.z_weight();
  std::optional<GramCache> cache;
  if (gram_eval) cache.emplace(spec_);
  std::uint64_t version = 0;

  Matrix u, v, ztu, utu, mtu;
  ExtendedReal f_new;
  double step_u = 0.0;
  double step_v = 0.0;
  bool need_u = true;
  int inner = 0;
  for (;;) {
    if (need_u) {
      mu = std::min(mu, mu_max);
      u = ComputeU(config_.scheme, spec_, params_,
                   UBlockInputs{xk, yk, zy, yty}, mu);
      utu.noalias() = u.transpose() * u;
      if (full_vec) {
        mtu.noalias() = spec_.adjoint_b().transpose() * u;
        ztu = zc * mtu;
        ztu.noalias() += a * (yk * (xk.transpose() * u));
      } else {
        ztu = z.TransposeTimes(u);
      }
      step_u = (u - xk).squaredNorm();
    }
    v = ComputeV(config_.scheme, spec_, params_,
                 VBlockInputs{u, yk, ztu, utu}, sigma);
    ++inner;
    if (gram_eval) {
      cache->Refresh(xk, yk, u, v, mtu, ++version);
      f_new = SnmfObjectiveCached(*cache, spec_, u, v, version);
    } else {
      f_new = FLambda(spec_, u, v);
    }
    step_v = (v - yk).squaredNorm();
    if (f_new.is_finite() &&
        f_new.value() - state.ref_value <=
            -0.5 * c * (step_u + step_v) +
                EvaluationNoise(f_new.value(), spec_.norm_b())) {
      break;
    }
    if (inner >= limit) {
      std::ostringstream msg;
      msg << "line search exceeded its inner-iteration budget (" << limit
          << ") at k = " << state.k << ": mu = " << mu
          << ", mu_max = " << mu_max << ", sigma = " << sigma
          << ", sigma_max = " << sigma_max << ", F(U,V) - R = "
          << (f_new.to_double() - state.ref_value);
      throw InvariantViolation(msg.str());
    }
    if (mu == mu_max) {
      sigma_max = curvature * SpectralNormSquaredFromGram(utu) + c;
      limit = std::max(budget, SigmaPhaseBudget(mu_max, config_.mu_min, sigma_max,
                                                config_.sigma_min, tau));
      sigma = std::min(tau * sigma, sigma_max);
      need_u = false;
    } else {
      mu *= tau;
      sigma *= tau;
      need_u = true;
    }
  }

  // Step 3: commit.
  const double f_prev = state.f_value;
  const double ref_prev = state.ref_value;
  const double p = config_.line_search.p_schedule
                       ? config_.line_search.p_schedule(state.k)
                       : config_.line_search.p_const;
  state.ref_value = ReferenceValueUpdate(config_.line_search, state.ref_value,
                                         f_new.value(), p, state.f_history);
  std::optional<AuditSnapshot> snapshot;
  if (config_.audit) {
    snapshot = AuditSnapshot{xk, yk, u, v, f_prev, ref_prev, mu_max, sigma_max};
  }
  state.x = std::move(u);
  state.y = std::move(v);
  state.f_value = f_new.value();
  state.mu_bar = mu;
  state.sigma_bar = sigma;
  ++state.k;
  const double rel_change =
      std::abs(state.f_value - f_prev) / (state.f_value + 1.0);
  state.consec_small = rel_change <= config_.tol ? state.consec_small + 1 : 0;
  state.elapsed_sec += SecondsSince(start);

  IterationRecord rec;
  rec.k = state.k;
  rec.elapsed_sec = state.elapsed_sec;
  rec.f_value = state.f_value;
  rec.ref_value = state.ref_value;
  rec.relobj = spec_.norm_b() > 0.0
                   ? RelObjFromValue(spec_, state.f_value)
                   : std::numeric_limits<double>::quiet_NaN();
  rec.sym_gap = SymmetryGap(state.x, state.y);
  rec.stationarity_residual =
      config_.trace_residual ? StationarityResidual(spec_, state.x, state.y)
                             : std::numeric_limits<double>::quiet_NaN();
  rec.mu_bar = mu;
  rec.sigma_bar = sigma;
  rec.inner_iterations = inner;
  rec.inner_budget = budget;
  rec.step_norm = std::sqrt(step_u) + std::sqrt(step_v);
  rec.audit = std::move(snapshot);
  return rec;
}

SolveResult Solver::Solve(Matrix x0, Matrix y0) const {
  SolverState state = Initialize(std::move(x0), std::move(y0));
  SolveResult result;
  for (;;) {
    if (state.k >= config_.max_iters) {
      result.status = SolveStatus::kIterLimit;
      break;
    }
    if (state.elapsed_sec >= config_.max_time_sec) {
      result.status = SolveStatus::kTimeLimit;
      break;
    }
    result.trace.push_back(Step(state));
    if (state.consec_small >= config_.consec_required) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.elapsed_sec = state.elapsed_sec;
  result.x = std::move(state.x);
  result.y = std::move(state.y);
  return result;
}

SolveResult Solver::Solve() const {
  auto [x0, y0] = RandomStart();
  return Solve(std::move(x0), std::move(y0));
}

}  // namespace gsmf
