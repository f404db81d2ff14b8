#include "gsmf/updates.h"

#include <Eigen/Cholesky>

#include "gsmf/errors.h"

namespace gsmf {

std::string ToString(UpdateScheme scheme) {
  switch (scheme) {
    case UpdateScheme::kProximal:
      return "proximal";
    case UpdateScheme::kProxLinear:
      return "prox_linear";
    case UpdateScheme::kHierarchicalProx:
      return "hierarchical";
  }
  return "unknown";
}

UpdateScheme ParseUpdateScheme(const std::string& name) {
  if (name == "proximal" || name == "prox") return UpdateScheme::kProximal;
  if (name == "prox_linear" || name == "proxlinear") {
    return UpdateScheme::kProxLinear;
  }
  if (name == "hierarchical" || name == "hierarchical_prox" || name == "hals") {
    return UpdateScheme::kHierarchicalProx;
  }
  throw ParameterError("unknown update scheme '" + name +
                       "' (expected proximal, prox_linear, hierarchical)");
}

AuxiliaryView AuxiliaryView::Dense(const Matrix& z) {
  AuxiliaryView view;
  view.dense_ = &z;
  return view;
}

AuxiliaryView AuxiliaryView::LowRankPlusTarget(const Matrix& x,
                                               const Matrix& y,
                                               const Matrix& target, double a,
                                               double c) {
  AuxiliaryView view;
  view.x_ = &x;
  view.y_ = &y;
  view.target_ = &target;
  view.a_ = a;
  view.c_ = c;
  return view;
}

AuxiliaryView AuxiliaryView::ForIterate(const ProblemSpec& spec,
                                        const RelaxationParams& params,
                                        const Matrix& x, const Matrix& y,
                                        Matrix& workspace) {
  if (spec.map().is_full_vectorization()) {
    const double c = params.z_weight();
    return LowRankPlusTarget(x, y, spec.adjoint_b(), 1.0 - c, c);
  }
  ZStarInto(spec, params, x, y, workspace);
  return Dense(workspace);
}

Eigen::Index AuxiliaryView::n() const {
  return dense_ ? dense_->rows() : target_->rows();
}

Matrix AuxiliaryView::Times(const Matrix& y) const {
  if (dense_) return (*dense_) * y;
  // a X (Y^T y) + c M y; the n x n product X Y^T is never formed.
  Matrix out = (*target_) * y;
  out *= c_;
  out.noalias() += a_ * ((*x_) * (y_->transpose() * y));
  return out;
}

Matrix AuxiliaryView::TransposeTimes(const Matrix& u) const {
  if (dense_) return dense_->transpose() * u;
  Matrix out = target_->transpose() * u;
  out *= c_;
  out.noalias() += a_ * ((*y_) * (x_->transpose() * u));
  return out;
}

Matrix AuxiliaryView::Materialize() const {
  if (dense_) return *dense_;
  return a_ * (*x_) * y_->transpose() + c_ * (*target_);
}

void ValidateScheme(UpdateScheme scheme, const ProblemSpec& spec) {
  switch (scheme) {
    case UpdateScheme::kProximal:
      if (!spec.psi().is_zero() || !spec.phi().is_zero()) {
        throw ConfigurationError(
            "the proximal scheme has a closed form only for the zero "
            "regularizer; use prox_linear or hierarchical with " +
            spec.psi().name() + " / " + spec.phi().name());
      }
      return;
    case UpdateScheme::kProxLinear:
      return;
    case UpdateScheme::kHierarchicalProx:
      if (!spec.psi().column_separable() || !spec.phi().column_separable()) {
        throw ConfigurationError(
            "the hierarchical scheme needs column-separable regularizers");
      }
      return;
  }
}

namespace {

// Solves W (alpha G + shift I) = rhs for W, G symmetric r x r.
Matrix SolveShiftedGram(const Matrix& gram, double alpha, double shift,
                        const Matrix& rhs) {
  Matrix system = alpha * gram;
  system.diagonal().array() += shift;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(
        "proximal block system alpha G + (lambda + mu) I is not positive "
        "definite");
  }
  // W S = R  <=>  S W^T = R^T (S symmetric).
  Matrix wt = llt.solve(rhs.transpose());
  if (!wt.allFinite()) throw NumericalError("proximal block solve failed");
  return wt.transpose();
}

// Column sweep shared by both blocks:
//   w_i = prox_i((alpha p_i + lambda a_i + prox_w * b_i) / L, 1 / L),
//   L = alpha gram_ii + lambda + prox_w,
//   p_i = target_i - sum_{j != i} w_j gram_ji,
// where w_j is already updated for j < i and equal to `start` for j > i.
Matrix HierarchicalSweep(const Regularizer& reg, double alpha, double lambda,
                         double prox_w, const Matrix& start,
                         const Matrix& target, const Matrix& gram,
                         const Matrix& anchor) {
  Matrix w = start;
  const Eigen::Index r = start.cols();
  Vector p(start.rows());
  for (Eigen::Index i = 0; i < r; ++i) {
    p.noalias() = target.col(i) - w * gram.col(i);
    p.noalias() += gram(i, i) * w.col(i);
    const double lip = alpha * gram(i, i) + lambda + prox_w;
    if (!(lip > 0.0)) {
      throw NumericalError("hierarchical column subproblem is not strongly "
                           "convex (alpha ||y_i||^2 + lambda + mu <= 0)");
    }
    Vector arg = (alpha * p + lambda * anchor.col(i) + prox_w * start.col(i)) /
                 lip;
    w.col(i) = reg.ProxColumn(static_cast<int>(i), arg, 1.0 / lip);
  }
  return w;
}

}  // namespace

Matrix ComputeU(UpdateScheme scheme, const ProblemSpec& spec,
                const RelaxationParams& params, const UBlockInputs& in,
                double mu) {
  if (!(mu > 0.0)) throw ParameterError("mu must be > 0");
  const double alpha = params.alpha();
  const double lambda = spec.lambda();
  switch (scheme) {
    case UpdateScheme::kProximal: {
      ValidateScheme(scheme, spec);
      Matrix rhs = alpha * in.zy + lambda * in.yk + mu * in.xk;
      return SolveShiftedGram(in.yty, alpha, lambda + mu, rhs);
    }
    case UpdateScheme::kProxLinear: {
      // G = alpha (X Y^T - Z) Y.
      Matrix grad = alpha * (in.xk * in.yty - in.zy);
      Matrix arg = (lambda * in.yk + mu * in.xk - grad) / (lambda + mu);
      return spec.psi().Prox(arg, 1.0 / (lambda + mu));
    }
    case UpdateScheme::kHierarchicalProx:
      ValidateScheme(scheme, spec);
      return HierarchicalSweep(spec.psi(), alpha, lambda, mu, in.xk, in.zy,
                               in.yty, in.yk);
  }
  throw ConfigurationError("unknown update scheme");
}

Matrix ComputeV(UpdateScheme scheme, const ProblemSpec& spec,
                const RelaxationParams& params, const VBlockInputs& in,
                double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
  const double alpha = params.alpha();
  const double lambda = spec.lambda();
  switch (scheme) {
    case UpdateScheme::kProximal: {
      ValidateScheme(scheme, spec);
      Matrix rhs = alpha * in.ztu + lambda * in.u + sigma * in.yk;
      return SolveShiftedGram(in.utu, alpha, lambda + sigma, rhs);
    }
    case UpdateScheme::kProxLinear: {
      // G' = alpha (U Y^T - Z)^T U.
      Matrix grad = alpha * (in.yk * in.utu - in.ztu);
      Matrix arg = (lambda * in.u + sigma * in.yk - grad) / (lambda + sigma);
      return spec.phi().Prox(arg, 1.0 / (lambda + sigma));
    }
    case UpdateScheme::kHierarchicalProx:
      ValidateScheme(scheme, spec);
      return HierarchicalSweep(spec.phi(), alpha, lambda, sigma, in.yk, in.ztu,
                               in.utu, in.u);
  }
  throw ConfigurationError("unknown update scheme");
}

Matrix UpdateU(UpdateScheme scheme, const ProblemSpec& spec,
               const RelaxationParams& params, const Matrix& xk,
               const Matrix& yk, const AuxiliaryView& z, double mu) {
  RequireShape(xk, spec.n(), spec.rank(), "X^k");
  RequireShape(yk, spec.n(), spec.rank(), "Y^k");
  const Matrix zy = z.Times(yk);
  const Matrix yty = yk.transpose() * yk;
  return ComputeU(scheme, spec, params, UBlockInputs{xk, yk, zy, yty}, mu);
}

Matrix UpdateV(UpdateScheme scheme, const ProblemSpec& spec,
               const RelaxationParams& params, const Matrix& u,
               const Matrix& yk, const AuxiliaryView& z, double sigma) {
  RequireShape(u, spec.n(), spec.rank(), "U");
  RequireShape(yk, spec.n(), spec.rank(), "Y^k");
  const Matrix ztu = z.TransposeTimes(u);
  const Matrix utu = u.transpose() * u;
  return ComputeV(scheme, spec, params, VBlockInputs{u, yk, ztu, utu}, sigma);
}

}  // namespace gsmf
