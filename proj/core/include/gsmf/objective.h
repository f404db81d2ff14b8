#ifndef GSMF_OBJECTIVE_H_
#define GSMF_OBJECTIVE_H_

#include <cstdint>

#include "gsmf/extended_real.h"
#include "gsmf/operators.h"
#include "gsmf/regularizers.h"
#include "gsmf/types.h"

namespace gsmf {

// One instance of
//   min_{X,Y in R^{n x r}} Psi(X) + Phi(Y) + 1/2 ||A(X Y^T) - b||^2
//                          + lambda/2 ||X - Y||_F^2.
//
// With lambda == 0 the caller is responsible for level-boundedness.
class ProblemSpec {
 public:
  ProblemSpec(LinearMap map, Vector b, RegularizerPtr psi, RegularizerPtr phi,
              double lambda, int rank);

  // Approximate symmetric NMF: A = vec, b = vec(M), Psi = Phi = indicator of
  // the nonnegative orthant.
  static ProblemSpec Snmf(const Matrix& m, int rank, double lambda);

  const LinearMap& map() const { return map_; }
  const Vector& b() const { return b_; }
  const Regularizer& psi() const { return *psi_; }
  const Regularizer& phi() const { return *phi_; }
  const RegularizerPtr& psi_ptr() const { return psi_; }
  const RegularizerPtr& phi_ptr() const { return phi_; }
  double lambda() const { return lambda_; }
  int n() const { return map_.n(); }
  int rank() const { return rank_; }
  int q() const { return map_.q(); }

  // A^*(b), computed once.
  const Matrix& adjoint_b() const { return adjoint_b_; }
  // ||b||_2, computed once.
  double norm_b() const { return norm_b_; }

  ProblemSpec WithLambda(double lambda) const;

 private:
  LinearMap map_;
  Vector b_;
  RegularizerPtr psi_;
  RegularizerPtr phi_;
  double lambda_;
  int rank_;
  Matrix adjoint_b_;
  double norm_b_;
};

// (alpha, beta, gamma, rho) with 1/alpha + 1/beta = 1,
// gamma >= max{0, -alpha, -(alpha+beta)} and rho = max{1, alpha^2/(alpha+beta)^2}.
class RelaxationParams {
 public:
  // beta = alpha / (alpha - 1); gamma defaults to its smallest admissible value.
  static RelaxationParams FromAlpha(double alpha);
  static RelaxationParams FromAlpha(double alpha, double gamma);

  // Validates 1/alpha + 1/beta = 1 to relative tolerance 1e-12 and the gamma
  // bound; throws ParameterError otherwise.
  RelaxationParams(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double rho() const { return rho_; }
  // beta / (alpha + beta), the weight of A^*(b) in the Z-update.
  double z_weight() const { return beta_ / (alpha_ + beta_); }
  // alpha + 2 gamma rho, the curvature constant in mu_max and sigma_max.
  double curvature() const { return alpha_ + 2.0 * gamma_ * rho_; }

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double rho_;
};

// F_lambda(X, Y). +inf when either regularizer is +inf; the quadratic terms
// are then skipped.
ExtendedReal FLambda(const ProblemSpec& spec, const Matrix& x, const Matrix& y);

// Theta_{alpha,beta,lambda}(X, Y, Z) = Psi(X) + Phi(Y) + alpha/2 ||X Y^T - Z||^2
//   + beta/2 ||A(Z) - b||^2 + lambda/2 ||X - Y||^2.
ExtendedReal Theta(const ProblemSpec& spec, const RelaxationParams& params,
                   const Matrix& x, const Matrix& y, const Matrix& z);

// Z = (I - beta/(alpha+beta) A^*A)(X Y^T) + beta/(alpha+beta) A^*(b).
Matrix ZStar(const ProblemSpec& spec, const RelaxationParams& params,
             const Matrix& x, const Matrix& y);
// Same, written into `z` (resized if needed). No other n x n buffer is used.
void ZStarInto(const ProblemSpec& spec, const RelaxationParams& params,
               const Matrix& x, const Matrix& y, Matrix& z);

// sqrt(2 F_lambda) / ||b||. Throws ParameterError when F is infinite or b = 0.
double RelObj(const ProblemSpec& spec, const Matrix& x, const Matrix& y);
double RelObjFromValue(const ProblemSpec& spec, const ExtendedReal& f);

// Cached r x r (and one n x r) products for evaluating the SNMF objective and
// step lengths without forming U V^T:
//   ||U V^T - M||^2 = tr((U^T U)(V^T V)) - 2 <M^T U, V> + ||M||^2.
// Requires a full-vectorization spec. Single writer; owned by one solver.
class GramCache {
 public:
  explicit GramCache(const ProblemSpec& spec);

  // Recomputes every product for the previous iterate (X, Y) and the
  // candidate (U, V), and stamps the cache with `version`.
  void Refresh(const Matrix& x, const Matrix& y, const Matrix& u,
               const Matrix& v, std::uint64_t version);
  // Variant for callers that already hold M^T U.
  void Refresh(const Matrix& x, const Matrix& y, const Matrix& u,
               const Matrix& v, const Matrix& mtu, std::uint64_t version);

  std::uint64_t version() const { return version_; }
  const Matrix& UtU() const { return utu_; }
  const Matrix& VtV() const { return vtv_; }
  const Matrix& UtV() const { return utv_; }
  const Matrix& XtU() const { return xtu_; }
  const Matrix& YtV() const { return ytv_; }
  const Matrix& MtU() const { return mtu_; }
  double normM2() const { return norm_m2_; }

  // ||U - X||^2 and ||V - Y||^2 from the traces.
  double StepNormSquaredU() const;
  double StepNormSquaredV() const;

 private:
  const Matrix* m_;
  double norm_m2_;
  double trace_xtx_ = 0.0;
  double trace_yty_ = 0.0;
  Matrix utu_, vtv_, utv_, xtu_, ytv_, mtu_;
  std::uint64_t version_ = 0;
};

// F_lambda(U, V) for SNMF from a fresh cache. Throws InvariantViolation if
// `version` differs from the cache stamp, ConfigurationError if the problem is
// not SNMF. The regularizer terms are evaluated directly (O(n r)).
ExtendedReal SnmfObjectiveCached(const GramCache& cache,
                                 const ProblemSpec& spec, const Matrix& u,
                                 const Matrix& v, std::uint64_t version);

}  // namespace gsmf

#endif  // GSMF_OBJECTIVE_H_
