#include "gsmf/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsmf/errors.h"
#include "gsmf/linalg.h"

namespace gsmf {

SmoothGradient SmoothPartGradient(const ProblemSpec& spec, const Matrix& x,
                                  const Matrix& y) {
  RequireShape(x, spec.n(), spec.rank(), "X");
  RequireShape(y, spec.n(), spec.rank(), "Y");
  // A^*(A(X Y^T) - b), an n x n matrix.
  Matrix residual = spec.map().Adjoint(spec.map().ApplyProduct(x, y) - spec.b());
  const Matrix diff = x - y;
  SmoothGradient g;
  g.gx = residual * y + spec.lambda() * diff;
  g.gy = residual.transpose() * x - spec.lambda() * diff;
  return g;
}

double ProxGradientResidual(const Regularizer& reg, const Matrix& x,
                            const Matrix& g) {
  return (x - reg.Prox(x - g, 1.0)).norm();
}

double StationarityResidual(const ProblemSpec& spec, const Matrix& x,
                            const Matrix& y) {
  if (FLambda(spec, x, y).is_infinite()) {
    throw ParameterError("stationarity residual: F_lambda(X, Y) = +inf");
  }
  const SmoothGradient g = SmoothPartGradient(spec, x, y);
  return ProxGradientResidual(spec.psi(), x, g.gx) +
         ProxGradientResidual(spec.phi(), y, g.gy);
}

double SymmetryGap(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("symmetry gap: X is " + ShapeString(x.rows(), x.cols()) +
                         ", Y is " + ShapeString(y.rows(), y.cols()));
  }
  return (x - y).squaredNorm();
}

PenaltyThreshold ExactPenaltyThreshold(const ProblemSpec& spec,
                                       const Matrix& x, const Matrix& y) {
  if (!spec.psi().SameAs(spec.phi())) {
    throw PreconditionError("exact penalty threshold needs Psi = Phi (got " +
                            spec.psi().name() + " and " + spec.phi().name() +
                            ")");
  }
  const Matrix& target = spec.adjoint_b();
  const double asym = RelativeAsymmetry(target);
  if (asym > 1e-10) {
    throw PreconditionError(
        "exact penalty threshold needs A^*(b) symmetric (relative asymmetry " +
        std::to_string(asym) + ")");
  }
  Matrix product = x * y.transpose();
  spec.map().GramApplyInPlace(product);
  const double norm = PowerIterationNorm(product);
  const Matrix sym = 0.5 * (target + target.transpose());
  PenaltyThreshold out;
  out.threshold = 0.5 * (norm + spec.phi().kappa() - MinEigenvalue(sym));
  out.satisfied = spec.lambda() > out.threshold;
  return out;
}

double RelaxationConsistency(const ProblemSpec& spec,
                             const RelaxationParams& params, const Matrix& x,
                             const Matrix& y) {
  const ExtendedReal f = FLambda(spec, x, y);
  const ExtendedReal theta = Theta(spec, params, x, y, ZStar(spec, params, x, y));
  if (f.is_infinite() || theta.is_infinite()) {
    return f.is_infinite() == theta.is_infinite()
               ? 0.0
               : std::numeric_limits<double>::infinity();
  }
  return std::abs(theta.value() - f.value());
}

double UInclusionResidual(UpdateScheme scheme, const ProblemSpec& spec,
                          const RelaxationParams& params, const Matrix& xk,
                          const Matrix& yk, const Matrix& zk, double mu,
                          const Matrix& u) {
  const double alpha = params.alpha();
  const double lambda = spec.lambda();
  switch (scheme) {
    case UpdateScheme::kProximal:
    case UpdateScheme::kProxLinear: {
      const Matrix& lin = scheme == UpdateScheme::kProximal ? u : xk;
      Matrix g = alpha * (lin * yk.transpose() - zk) * yk +
                 lambda * (u - yk) + mu * (u - xk);
      return ProxGradientResidual(spec.psi(), u, g);
    }
    case UpdateScheme::kHierarchicalProx: {
      Matrix mixed = xk;
      double total = 0.0;
      for (Eigen::Index i = 0; i < u.cols(); ++i) {
        mixed.col(i) = u.col(i);
        Vector g = alpha * ((mixed * yk.transpose() - zk) * yk.col(i)) +
                   lambda * (u.col(i) - yk.col(i)) +
                   mu * (u.col(i) - xk.col(i));
        Vector arg = u.col(i) - g;
        const Vector p = spec.psi().ProxColumn(static_cast<int>(i), arg, 1.0);
        total += (u.col(i) - p).squaredNorm();
      }
      return std::sqrt(total);
    }
  }
  return 0.0;
}

double VInclusionResidual(UpdateScheme scheme, const ProblemSpec& spec,
                          const RelaxationParams& params, const Matrix& u,
                          const Matrix& yk, const Matrix& zk, double sigma,
                          const Matrix& v) {
  const double alpha = params.alpha();
  const double lambda = spec.lambda();
  switch (scheme) {
    case UpdateScheme::kProximal:
    case UpdateScheme::kProxLinear: {
      const Matrix& lin = scheme == UpdateScheme::kProximal ? v : yk;
      Matrix g = alpha * (u * lin.transpose() - zk).transpose() * u -
                 lambda * (u - v) + sigma * (v - yk);
      return ProxGradientResidual(spec.phi(), v, g);
    }
    case UpdateScheme::kHierarchicalProx: {
      Matrix mixed = yk;
      double total = 0.0;
      for (Eigen::Index i = 0; i < v.cols(); ++i) {
        mixed.col(i) = v.col(i);
        Vector g = alpha * ((u * mixed.transpose() - zk).transpose() * u.col(i)) -
                   lambda * (u.col(i) - v.col(i)) +
                   sigma * (v.col(i) - yk.col(i));
        Vector arg = v.col(i) - g;
        const Vector p = spec.phi().ProxColumn(static_cast<int>(i), arg, 1.0);
        total += (v.col(i) - p).squaredNorm();
      }
      return std::sqrt(total);
    }
  }
  return 0.0;
}

int DescentAudit(const std::vector<IterationRecord>& trace,
                 const ProblemSpec& spec, const RelaxationParams& params,
                 const SolverConfig& config,
                 const DescentAuditOptions& options) {
  const double curvature = params.curvature();
  int violations = 0;
  for (const IterationRecord& rec : trace) {
    if (!rec.audit) {
      throw ParameterError("descent audit: trace row " + std::to_string(rec.k) +
                           " has no snapshot (run with audit enabled)");
    }
    const AuditSnapshot& s = *rec.audit;
    const ExtendedReal f_new = FLambda(spec, s.x, s.y);
    const ExtendedReal f_old = FLambda(spec, s.x_prev, s.y_prev);
    if (f_new.is_infinite() || f_old.is_infinite()) {
      ++violations;
      continue;
    }
    const double tol = options.tolerance * (1.0 + std::abs(f_new.value()));
    const double dx = (s.x - s.x_prev).squaredNorm();
    const double dy = (s.y - s.y_prev).squaredNorm();

    bool ok = std::abs(rec.f_value - f_new.value()) <= tol;
    ok = ok && rec.f_value - s.ref_prev <= -0.5 * config.c * (dx + dy) + tol;

    const bool at_caps = rec.mu_bar == s.mu_max && rec.sigma_bar == s.sigma_max;
    if (options.check_all_steps || at_caps) {
      const double bound =
          -0.5 * (rec.mu_bar - curvature * SpectralNormSquared(s.y_prev)) * dx -
          0.5 * (rec.sigma_bar - curvature * SpectralNormSquared(s.x)) * dy;
      ok = ok && f_new.value() - f_old.value() <= bound + tol;
    }
    if (!ok) ++violations;
  }
  return violations;
}

DiagnosticsReport Diagnose(const ProblemSpec& spec,
                           const RelaxationParams& params,
                           const SolverConfig& config, const Matrix& x,
                           const Matrix& y,
                           const std::vector<IterationRecord>& trace) {
  DiagnosticsReport report;
  report.stationarity_residual = StationarityResidual(spec, x, y);
  report.sym_gap = SymmetryGap(x, y);
  try {
    const PenaltyThreshold t = ExactPenaltyThreshold(spec, x, y);
    report.penalty_threshold = t.threshold;
    report.penalty_satisfied = t.satisfied;
    report.penalty_applicable = true;
  } catch (const PreconditionError&) {
    report.penalty_applicable = false;
  }
  report.relaxation_gap = RelaxationConsistency(spec, params, x, y);
  const bool audited =
      !trace.empty() && std::all_of(trace.begin(), trace.end(),
                                    [](const IterationRecord& r) {
                                      return r.audit.has_value();
                                    });
  if (audited) report.descent_violations = DescentAudit(trace, spec, params, config);
  return report;
}

}  // namespace gsmf
