#include "gsmf/regularizers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsmf/errors.h"

namespace gsmf {
namespace {

void RequirePositiveStep(double t) {
  if (!(t > 0.0)) {
    throw ParameterError("prox step t must be > 0, got " + std::to_string(t));
  }
}

}  // namespace

Vector Regularizer::ProxColumn(int column, const Vector& w, double t) const {
  if (!column_separable()) {
    throw UnsupportedOperation(name() + " is not column-separable");
  }
  if (column < 0) throw ParameterError("column index must be >= 0");
  Matrix single = w;
  return Prox(single, t).col(0);
}

BuiltinRegularizer::BuiltinRegularizer(RegularizerKind kind, double weight)
    : kind_(kind), weight_(weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw ParameterError("regularizer weight must be finite and >= 0");
  }
  if (kind == RegularizerKind::kZero ||
      kind == RegularizerKind::kNonnegIndicator) {
    weight_ = 0.0;
  }
}

std::string BuiltinRegularizer::name() const {
  switch (kind_) {
    case RegularizerKind::kZero:
      return "zero";
    case RegularizerKind::kNonnegIndicator:
      return "nonneg";
    case RegularizerKind::kL1:
      return "l1(" + std::to_string(weight_) + ")";
    case RegularizerKind::kNonnegL1:
      return "nonneg_l1(" + std::to_string(weight_) + ")";
  }
  return "unknown";
}

ExtendedReal BuiltinRegularizer::Eval(const Matrix& x) const {
  const bool needs_sign =
      kind_ == RegularizerKind::kNonnegIndicator ||
      kind_ == RegularizerKind::kNonnegL1;
  if (needs_sign && (x.array() < 0.0).any()) return ExtendedReal::Infinity();
  switch (kind_) {
    case RegularizerKind::kZero:
    case RegularizerKind::kNonnegIndicator:
      return 0.0;
    case RegularizerKind::kL1:
    case RegularizerKind::kNonnegL1:
      return weight_ * x.cwiseAbs().sum();
  }
  return 0.0;
}

Matrix BuiltinRegularizer::Prox(const Matrix& w, double t) const {
  RequirePositiveStep(t);
  const double thresh = weight_ * t;
  switch (kind_) {
    case RegularizerKind::kZero:
      return w;
    case RegularizerKind::kNonnegIndicator:
      return w.cwiseMax(0.0);
    case RegularizerKind::kL1:
      return w.unaryExpr([thresh](double v) {
        return std::copysign(std::max(std::abs(v) - thresh, 0.0), v);
      });
    case RegularizerKind::kNonnegL1:
      return (w.array() - thresh).cwiseMax(0.0).matrix();
  }
  return w;
}

Vector BuiltinRegularizer::ProxColumn(int column, const Vector& w,
                                      double t) const {
  if (column < 0) throw ParameterError("column index must be >= 0");
  return Prox(w, t);
}

bool BuiltinRegularizer::is_zero() const {
  return kind_ == RegularizerKind::kZero ||
         (kind_ == RegularizerKind::kL1 && weight_ == 0.0);
}

bool BuiltinRegularizer::SameAs(const Regularizer& other) const {
  const auto* b = dynamic_cast<const BuiltinRegularizer*>(&other);
  if (b == nullptr) return false;
  if (is_zero() && b->is_zero()) return true;
  return kind_ == b->kind_ && weight_ == b->weight_;
}

RegularizerPtr MakeZero() {
  return std::make_shared<BuiltinRegularizer>(RegularizerKind::kZero);
}
RegularizerPtr MakeNonnegIndicator() {
  return std::make_shared<BuiltinRegularizer>(
      RegularizerKind::kNonnegIndicator);
}
RegularizerPtr MakeL1(double weight) {
  return std::make_shared<BuiltinRegularizer>(RegularizerKind::kL1, weight);
}
RegularizerPtr MakeNonnegL1(double weight) {
  return std::make_shared<BuiltinRegularizer>(RegularizerKind::kNonnegL1,
                                              weight);
}

RegularizerPtr MakeRegularizer(const std::string& kind, double weight) {
  if (kind == "zero" || kind == "none") return MakeZero();
  if (kind == "nonneg") return MakeNonnegIndicator();
  if (kind == "l1") return MakeL1(weight);
  if (kind == "nonneg_l1" || kind == "nonneg+l1") return MakeNonnegL1(weight);
  throw ParameterError("unknown regularizer kind '" + kind +
                       "' (expected zero, nonneg, l1, nonneg_l1)");
}

}  // namespace gsmf
