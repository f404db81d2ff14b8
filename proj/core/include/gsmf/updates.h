#ifndef GSMF_UPDATES_H_
#define GSMF_UPDATES_H_

#include <string>

#include "gsmf/objective.h"
#include "gsmf/types.h"

namespace gsmf {

// Block update rule, applied to both U and V.
enum class UpdateScheme {
  // Exact minimization with a proximal term. Only the Zero regularizer is
  // supported (r x r linear solve).
  kProximal,
  // Linearize alpha/2 ||X Y^T - Z||^2 at the current block, then prox.
  kProxLinear,
  // Column-by-column exact minimization; needs a column-separable
  // regularizer.
  kHierarchicalProx,
};

std::string ToString(UpdateScheme scheme);
// "proximal", "prox_linear" / "proxlinear", "hierarchical" / "hals".
UpdateScheme ParseUpdateScheme(const std::string& name);

// Read-only view of Z^k used by the block updates: it answers Z Y and Z^T U.
//
// For full vectorization Z = a X Y^T + c M is never formed; products cost
// O(n r^2) plus one product with M. Otherwise Z is a dense matrix owned by
// the caller. The view does not own anything; every referenced matrix must
// outlive it.
class AuxiliaryView {
 public:
  static AuxiliaryView Dense(const Matrix& z);
  static AuxiliaryView LowRankPlusTarget(const Matrix& x, const Matrix& y,
                                         const Matrix& target, double a,
                                         double c);
  // Builds the view of Z^k for (X, Y). For sampling maps Z is written into
  // `workspace`, which the view then references.
  static AuxiliaryView ForIterate(const ProblemSpec& spec,
                                  const RelaxationParams& params,
                                  const Matrix& x, const Matrix& y,
                                  Matrix& workspace);

  Eigen::Index n() const;
  // Z * Y.
  Matrix Times(const Matrix& y) const;
  // Z^T * U.
  Matrix TransposeTimes(const Matrix& u) const;
  Matrix Materialize() const;

 private:
  AuxiliaryView() = default;

  const Matrix* dense_ = nullptr;
  const Matrix* x_ = nullptr;
  const Matrix* y_ = nullptr;
  const Matrix* target_ = nullptr;
  double a_ = 0.0;
  double c_ = 0.0;
};

// Inputs for the U-block with Y^k and Z^k fixed. zy = Z^k Y^k, yty = Y^kT Y^k.
struct UBlockInputs {
  const Matrix& xk;
  const Matrix& yk;
  const Matrix& zy;
  const Matrix& yty;
};

// Inputs for the V-block with U and Z^k fixed. ztu = Z^kT U, utu = U^T U.
struct VBlockInputs {
  const Matrix& u;
  const Matrix& yk;
  const Matrix& ztu;
  const Matrix& utu;
};

// Throws ConfigurationError when the scheme cannot be used with the problem's
// regularizers.
void ValidateScheme(UpdateScheme scheme, const ProblemSpec& spec);

Matrix ComputeU(UpdateScheme scheme, const ProblemSpec& spec,
                const RelaxationParams& params, const UBlockInputs& in,
                double mu);
Matrix ComputeV(UpdateScheme scheme, const ProblemSpec& spec,
                const RelaxationParams& params, const VBlockInputs& in,
                double sigma);

// Convenience wrappers that form the products themselves.
Matrix UpdateU(UpdateScheme scheme, const ProblemSpec& spec,
               const RelaxationParams& params, const Matrix& xk,
               const Matrix& yk, const AuxiliaryView& z, double mu);
Matrix UpdateV(UpdateScheme scheme, const ProblemSpec& spec,
               const RelaxationParams& params, const Matrix& u,
               const Matrix& yk, const AuxiliaryView& z, double sigma);

}  // namespace gsmf

#endif  // GSMF_UPDATES_H_
