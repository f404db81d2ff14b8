#include "identity_suite.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsmf/diagnostics.h"
#include "gsmf/random.h"

namespace gsmf::cli {
namespace {

std::string Worst(double v) {
  std::ostringstream s;
  s << "worst " << v;
  return s.str();
}

// Worst violation of h(P) <= h(Q) over random perturbations Q of P, where
// h(Q) = t Reg(Q) + 1/2 ||Q - W||^2 and P = prox(W, t).
double ProxOptimality(const Regularizer& reg, Rng& rng, int n, int r, int trials) {
  const double t = 0.7;
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Matrix w = rng.NormalMatrix(n, r);
    const Matrix p = reg.Prox(w, t);
    const ExtendedReal rp = reg.Eval(p);
    if (!rp.is_finite()) return INFINITY;
    const double hp = t * rp.value() + 0.5 * (p - w).squaredNorm();
    const double scale = std::pow(10.0, -1.0 - trial % 6);
    const Matrix q = p + scale * rng.NormalMatrix(n, r);
    const ExtendedReal rq = reg.Eval(q);
    if (!rq.is_finite()) continue;
    const double hq = t * rq.value() + 0.5 * (q - w).squaredNorm();
    worst = std::max(worst, (hp - hq) / (1.0 + std::abs(hp)));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> RunIdentitySuite(const ProblemSpec& spec,
                                          const RelaxationParams* params,
                                          std::uint64_t seed, int trials) {
  std::vector<CheckResult> out;
  Rng rng(seed);
  const LinearMap& map = spec.map();
  const int n = spec.n();
  const int r = spec.rank();

  double adj = 0.0, iso = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Matrix u = rng.NormalMatrix(n, n);
    const Vector v = rng.NormalMatrix(map.q(), 1);
    const double lhs = map.Apply(u).dot(v);
    const double rhs = (u.array() * map.Adjoint(v).array()).sum();
    adj = std::max(adj, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    iso = std::max(iso, (map.Apply(map.Adjoint(v)) - v).cwiseAbs().maxCoeff());
  }
  out.push_back({"operator.adjoint_identity", adj <= 1e-12, Worst(adj)});
  out.push_back({"operator.partial_isometry", iso <= 1e-12, Worst(iso)});

  if (!map.is_full_vectorization()) {
    double skew = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Matrix u = rng.NormalMatrix(n, n);
      const Matrix g = map.GramApply(u);
      const Matrix lhs = g - g.transpose();
      const Matrix rhs = map.GramApply(u - u.transpose());
      skew = std::max(skew, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    out.push_back({"operator.skew_identity", skew <= 1e-14, Worst(skew)});
  }

  if (params) {
    double inv = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Matrix w = rng.NormalMatrix(n, n);
      const Matrix s = map.ShiftedInverseApply(params->alpha(), params->beta(), w);
      const Matrix back = params->alpha() * s + params->beta() * map.GramApply(s);
      inv = std::max(inv, (back - w).norm() / w.norm());
    }
    out.push_back({"operator.shifted_inverse", inv <= 1e-12, Worst(inv)});
  }

  const int prox_trials = std::max(trials, 60);
  const double psi = ProxOptimality(spec.psi(), rng, n, r, prox_trials);
  out.push_back({"regularizer.psi_prox", psi <= 1e-12, spec.psi().name() + ", " + Worst(psi)});
  const double phi = ProxOptimality(spec.phi(), rng, n, r, prox_trials);
  out.push_back({"regularizer.phi_prox", phi <= 1e-12, spec.phi().name() + ", " + Worst(phi)});

  if (params) {
    double gap = 0.0;
    for (int t = 0; t < std::min(trials, 20); ++t) {
      const Matrix x = rng.UniformMatrix(n, r);
      const Matrix y = rng.UniformMatrix(n, r);
      const ExtendedReal f = FLambda(spec, x, y);
      if (!f.is_finite()) continue;
      gap = std::max(gap, RelaxationConsistency(spec, *params, x, y) /
                              (1.0 + std::abs(f.value())));
    }
    out.push_back({"relaxation_identity", gap <= 1e-10, Worst(gap)});
  }
  return out;
}

}  // namespace gsmf::cli
