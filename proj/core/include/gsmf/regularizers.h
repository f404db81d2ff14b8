#ifndef GSMF_REGULARIZERS_H_
#define GSMF_REGULARIZERS_H_

#include <memory>
#include <string>

#include "gsmf/extended_real.h"
#include "gsmf/types.h"

namespace gsmf {

// A proper, closed, bounded-below function on n x r matrices together with its
// proximal mapping.
//
// Third-party regularizers (including nonconvex ones) derive from this class.
// They must declare their weak-convexity modulus through kappa(); it enters
// the exact-penalty threshold. Prox() must return a global minimizer of
//   Eval(X) + ||X - W||_F^2 / (2 t).
class Regularizer {
 public:
  virtual ~Regularizer() = default;

  virtual std::string name() const = 0;
  virtual ExtendedReal Eval(const Matrix& x) const = 0;
  // Throws ParameterError when t <= 0.
  virtual Matrix Prox(const Matrix& w, double t) const = 0;
  // Weak-convexity modulus; 0 for convex functions.
  virtual double kappa() const = 0;
  // True when Eval(X) = sum_i psi_i(x_i) over the columns of X.
  virtual bool column_separable() const = 0;

  // Prox of psi_{column} (0-based) applied to w. The default throws
  // UnsupportedOperation for non-separable regularizers and otherwise runs
  // Prox() on a single-column matrix, which is valid when all psi_i agree.
  virtual Vector ProxColumn(int column, const Vector& w, double t) const;

  // True when the function is identically zero. Used to pick closed-form
  // paths in the proximal block update.
  virtual bool is_zero() const { return false; }

  // Mathematical equality of two regularizers. Built-ins compare kind and
  // weight; the default is object identity.
  virtual bool SameAs(const Regularizer& other) const { return this == &other; }
};

using RegularizerPtr = std::shared_ptr<const Regularizer>;

// Built-in convex, column-separable regularizers.
enum class RegularizerKind { kZero, kNonnegIndicator, kL1, kNonnegL1 };

class BuiltinRegularizer final : public Regularizer {
 public:
  // weight must be >= 0 and is ignored for kZero and kNonnegIndicator.
  explicit BuiltinRegularizer(RegularizerKind kind, double weight = 0.0);

  RegularizerKind kind() const { return kind_; }
  double weight() const { return weight_; }

  std::string name() const override;
  ExtendedReal Eval(const Matrix& x) const override;
  Matrix Prox(const Matrix& w, double t) const override;
  Vector ProxColumn(int column, const Vector& w, double t) const override;
  double kappa() const override { return 0.0; }
  bool column_separable() const override { return true; }
  bool is_zero() const override;
  bool SameAs(const Regularizer& other) const override;

 private:
  RegularizerKind kind_;
  double weight_;
};

RegularizerPtr MakeZero();
RegularizerPtr MakeNonnegIndicator();
RegularizerPtr MakeL1(double weight);
RegularizerPtr MakeNonnegL1(double weight);

// Parses "zero", "nonneg", "l1", "nonneg_l1" (aliases: "none", "nonneg+l1").
// Throws ParameterError on unknown names.
RegularizerPtr MakeRegularizer(const std::string& kind, double weight = 0.0);

}  // namespace gsmf

#endif  // GSMF_REGULARIZERS_H_
