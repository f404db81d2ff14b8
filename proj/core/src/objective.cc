#include "gsmf/objective.h"

#include <cmath>
#include <string>
#include <utility>

#include "gsmf/errors.h"

namespace gsmf {
namespace {

void RequireFactors(const ProblemSpec& spec, const Matrix& x, const Matrix& y) {
  RequireShape(x, spec.n(), spec.rank(), "X");
  RequireShape(y, spec.n(), spec.rank(), "Y");
}

}  // namespace

ProblemSpec::ProblemSpec(LinearMap map, Vector b, RegularizerPtr psi,
                         RegularizerPtr phi, double lambda, int rank)
    : map_(std::move(map)),
      b_(std::move(b)),
      psi_(std::move(psi)),
      phi_(std::move(phi)),
      lambda_(lambda),
      rank_(rank) {
  if (b_.size() != map_.q()) {
    throw DimensionError("b: expected length " + std::to_string(map_.q()) +
                         ", got " + std::to_string(b_.size()));
  }
  if (!psi_ || !phi_) throw ParameterError("regularizers must be non-null");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw ParameterError("lambda must be finite and >= 0");
  }
  if (rank_ < 1 || rank_ > map_.n()) {
    throw ParameterError("rank must satisfy 1 <= r <= n (r = " +
                         std::to_string(rank_) +
                         ", n = " + std::to_string(map_.n()) + ")");
  }
  adjoint_b_ = map_.Adjoint(b_);
  norm_b_ = b_.norm();
}

ProblemSpec ProblemSpec::Snmf(const Matrix& m, int rank, double lambda) {
  if (m.rows() != m.cols()) {
    throw DimensionError("SNMF target must be square, got " +
                         ShapeString(m.rows(), m.cols()));
  }
  LinearMap map = LinearMap::FullVectorization(static_cast<int>(m.rows()));
  Vector b = map.Apply(m);
  return ProblemSpec(std::move(map), std::move(b), MakeNonnegIndicator(),
                     MakeNonnegIndicator(), lambda, rank);
}

ProblemSpec ProblemSpec::WithLambda(double lambda) const {
  return ProblemSpec(map_, b_, psi_, phi_, lambda, rank_);
}

RelaxationParams RelaxationParams::FromAlpha(double alpha) {
  if (alpha == 0.0 || alpha == 1.0 || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be finite and not in {0, 1}");
  }
  const double beta = alpha / (alpha - 1.0);
  return RelaxationParams(alpha, beta, GammaMin(alpha, beta));
}

RelaxationParams RelaxationParams::FromAlpha(double alpha, double gamma) {
  if (alpha == 0.0 || alpha == 1.0 || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be finite and not in {0, 1}");
  }
  return RelaxationParams(alpha, alpha / (alpha - 1.0), gamma);
}

RelaxationParams::RelaxationParams(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (alpha == 0.0 || beta == 0.0 || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw ParameterError("alpha and beta must be finite and nonzero");
  }
  const double sum = 1.0 / alpha + 1.0 / beta;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ParameterError("1/alpha + 1/beta must equal 1 (alpha = " +
                         std::to_string(alpha) + ", beta = " +
                         std::to_string(beta) + ", sum = " +
                         std::to_string(sum) + ")");
  }
  const double gmin = GammaMin(alpha, beta);
  if (!(gamma >= gmin) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be >= max{0, -alpha, -(alpha+beta)} = " +
                         std::to_string(gmin));
  }
  rho_ = Rho(alpha, beta);
}

ExtendedReal FLambda(const ProblemSpec& spec, const Matrix& x,
                     const Matrix& y) {
  RequireFactors(spec, x, y);
  ExtendedReal value = spec.psi().Eval(x) + spec.phi().Eval(y);
  if (value.is_infinite()) return value;
  const Vector residual = spec.map().ApplyProduct(x, y) - spec.b();
  value += 0.5 * residual.squaredNorm();
  value += 0.5 * spec.lambda() * (x - y).squaredNorm();
  return value;
}

ExtendedReal Theta(const ProblemSpec& spec, const RelaxationParams& params,
                   const Matrix& x, const Matrix& y, const Matrix& z) {
  RequireFactors(spec, x, y);
  RequireShape(z, spec.n(), spec.n(), "Z");
  ExtendedReal value = spec.psi().Eval(x) + spec.phi().Eval(y);
  if (value.is_infinite()) return value;
  Matrix split = x * y.transpose();
  split -= z;
  value += 0.5 * params.alpha() * split.squaredNorm();
  value += 0.5 * params.beta() * (spec.map().Apply(z) - spec.b()).squaredNorm();
  value += 0.5 * spec.lambda() * (x - y).squaredNorm();
  return value;
}

void ZStarInto(const ProblemSpec& spec, const RelaxationParams& params,
               const Matrix& x, const Matrix& y, Matrix& z) {
  RequireFactors(spec, x, y);
  const double sum = params.alpha() + params.beta();
  if (sum == 0.0) throw ParameterError("Z-update needs alpha + beta != 0");
  const double w = params.beta() / sum;
  const Matrix& target = spec.adjoint_b();
  z.resize(spec.n(), spec.n());
  z.noalias() = x * y.transpose();
  if (spec.map().is_full_vectorization()) {
    z *= (1.0 - w);
    z += w * target;
    return;
  }
  for (const IndexPair& p : spec.map().omega()) {
    double& entry = z(p.row - 1, p.col - 1);
    entry = (1.0 - w) * entry + w * target(p.row - 1, p.col - 1);
  }
}

Matrix ZStar(const ProblemSpec& spec, const RelaxationParams& params,
             const Matrix& x, const Matrix& y) {
  Matrix z;
  ZStarInto(spec, params, x, y, z);
  return z;
}

double RelObjFromValue(const ProblemSpec& spec, const ExtendedReal& f) {
  if (f.is_infinite()) throw ParameterError("relobj: objective is +inf");
  if (spec.norm_b() == 0.0) throw ParameterError("relobj: ||b|| = 0");
  return std::sqrt(2.0 * std::max(0.0, f.value())) / spec.norm_b();
}

double RelObj(const ProblemSpec& spec, const Matrix& x, const Matrix& y) {
  return RelObjFromValue(spec, FLambda(spec, x, y));
}

GramCache::GramCache(const ProblemSpec& spec)
    : m_(&spec.adjoint_b()), norm_m2_(spec.adjoint_b().squaredNorm()) {
  if (!spec.map().is_full_vectorization()) {
    throw ConfigurationError("GramCache needs a full-vectorization map");
  }
}

void GramCache::Refresh(const Matrix& x, const Matrix& y, const Matrix& u,
                        const Matrix& v, std::uint64_t version) {
  Refresh(x, y, u, v, m_->transpose() * u, version);
}

void GramCache::Refresh(const Matrix& x, const Matrix& y, const Matrix& u,
                        const Matrix& v, const Matrix& mtu,
                        std::uint64_t version) {
  trace_xtx_ = x.squaredNorm();
  trace_yty_ = y.squaredNorm();
  utu_.noalias() = u.transpose() * u;
  vtv_.noalias() = v.transpose() * v;
  utv_.noalias() = u.transpose() * v;
  xtu_.noalias() = x.transpose() * u;
  ytv_.noalias() = y.transpose() * v;
  mtu_ = mtu;
  version_ = version;
}

double GramCache::StepNormSquaredU() const {
  return std::max(0.0, utu_.trace() - 2.0 * xtu_.trace() + trace_xtx_);
}

double GramCache::StepNormSquaredV() const {
  return std::max(0.0, vtv_.trace() - 2.0 * ytv_.trace() + trace_yty_);
}

ExtendedReal SnmfObjectiveCached(const GramCache& cache,
                                 const ProblemSpec& spec, const Matrix& u,
                                 const Matrix& v, std::uint64_t version) {
  if (!spec.map().is_full_vectorization()) {
    throw ConfigurationError("cached objective needs a full-vectorization map");
  }
  if (cache.version() != version) {
    throw InvariantViolation("stale GramCache: stamped " +
                             std::to_string(cache.version()) +
                             ", requested " + std::to_string(version));
  }
  RequireFactors(spec, u, v);
  ExtendedReal value = spec.psi().Eval(u) + spec.phi().Eval(v);
  if (value.is_infinite()) return value;
  const double fit = (cache.UtU() * cache.VtV()).trace() -
                     2.0 * cache.MtU().cwiseProduct(v).sum() + cache.normM2();
  const double sym = cache.UtU().trace() - 2.0 * cache.UtV().trace() +
                     cache.VtV().trace();
  value += 0.5 * std::max(0.0, fit);
  value += 0.5 * spec.lambda() * std::max(0.0, sym);
  return value;
}

}  // namespace gsmf
