#ifndef GSMF_DIAGNOSTICS_H_
#define GSMF_DIAGNOSTICS_H_

#include <vector>

#include "gsmf/objective.h"
#include "gsmf/solver.h"
#include "gsmf/updates.h"

namespace gsmf {

// Gradients of the smooth part f(X, Y) = 1/2 ||A(X Y^T) - b||^2
// + lambda/2 ||X - Y||^2.
struct SmoothGradient {
  Matrix gx;
  Matrix gy;
};
SmoothGradient SmoothPartGradient(const ProblemSpec& spec, const Matrix& x,
                                  const Matrix& y);

// ||X - prox_Psi(X - G)|| with unit step. Zero iff 0 in dPsi(X) + G for
// convex Psi.
double ProxGradientResidual(const Regularizer& reg, const Matrix& x,
                            const Matrix& g);

// ||X - prox_Psi(X - grad_X f)||_F + ||Y - prox_Phi(Y - grad_Y f)||_F.
// Throws ParameterError when F(X, Y) = +inf.
double StationarityResidual(const ProblemSpec& spec, const Matrix& x,
                            const Matrix& y);

// ||X - Y||_F^2.
double SymmetryGap(const Matrix& x, const Matrix& y);

struct PenaltyThreshold {
  double threshold = 0.0;
  bool satisfied = false;
};

// (||A^*A(X Y^T)||_2 + kappa - lambda_min(A^*b)) / 2 and whether
// lambda > threshold. Requires Psi == Phi and A^*b symmetric (relative
// tolerance 1e-10); throws PreconditionError otherwise.
PenaltyThreshold ExactPenaltyThreshold(const ProblemSpec& spec,
                                       const Matrix& x, const Matrix& y);

// |Theta(X, Y, Z*(X, Y)) - F(X, Y)|.
double RelaxationConsistency(const ProblemSpec& spec,
                             const RelaxationParams& params, const Matrix& x,
                             const Matrix& y);

// Residual of the optimality inclusion the scheme promises for a candidate
// U (resp. V), measured as a unit-step prox-gradient residual. For the
// hierarchical scheme, column i uses u_1..u_i and x_{i+1}..x_r.
double UInclusionResidual(UpdateScheme scheme, const ProblemSpec& spec,
                          const RelaxationParams& params, const Matrix& xk,
                          const Matrix& yk, const Matrix& zk, double mu,
                          const Matrix& u);
double VInclusionResidual(UpdateScheme scheme, const ProblemSpec& spec,
                          const RelaxationParams& params, const Matrix& u,
                          const Matrix& yk, const Matrix& zk, double sigma,
                          const Matrix& v);

struct DescentAuditOptions {
  double tolerance = 1e-8;
  // Also check the sufficient-descent bound at steps where mu and sigma did
  // not reach their caps. The bound holds for every candidate.
  bool check_all_steps = true;
};

// Re-checks every audited trace row:
//  * the recorded F matches F(X^{k+1}, Y^{k+1});
//  * F(X^{k+1}, Y^{k+1}) - R_k <= -c/2 (||dX||^2 + ||dY||^2);
//  * F(X^{k+1}, Y^{k+1}) - F(X^k, Y^k) <= -(mu - C ||Y^k||^2)/2 ||dX||^2
//      - (sigma - C ||X^{k+1}||^2)/2 ||dY||^2, C = alpha + 2 gamma rho.
// Each comparison allows tolerance * (1 + |F|). Returns the number of rows
// failing at least one check. Throws ParameterError if a row has no
// snapshot.
int DescentAudit(const std::vector<IterationRecord>& trace,
                 const ProblemSpec& spec, const RelaxationParams& params,
                 const SolverConfig& config,
                 const DescentAuditOptions& options = {});

struct DiagnosticsReport {
  double stationarity_residual = 0.0;
  double sym_gap = 0.0;
  double penalty_threshold = 0.0;
  bool penalty_satisfied = false;
  // False when the threshold preconditions do not hold.
  bool penalty_applicable = false;
  double relaxation_gap = 0.0;
  int descent_violations = 0;
};

// Everything above for one point (and a trace, if it carries snapshots).
DiagnosticsReport Diagnose(const ProblemSpec& spec,
                           const RelaxationParams& params,
                           const SolverConfig& config, const Matrix& x,
                           const Matrix& y,
                           const std::vector<IterationRecord>& trace = {});

}  // namespace gsmf

#endif  // GSMF_DIAGNOSTICS_H_
