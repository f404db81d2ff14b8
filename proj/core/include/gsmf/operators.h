#ifndef GSMF_OPERATORS_H_
#define GSMF_OPERATORS_H_

#include <filesystem>
#include <vector>

#include "gsmf/types.h"

namespace gsmf {

// A 1-based (row, col) position in an n x n matrix.
struct IndexPair {
  int row = 0;
  int col = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// Measurement map A: R^{n x n} -> R^q with A A^* = I_q.
//
// Two variants are supported:
//  * full vectorization, q = n^2, column-major: [vec U]_{i + (j-1) n} = U_ij;
//  * symmetric sampling P_Omega, which reads the entries listed in Omega.
//
// For sampling, Omega must be sorted by column first and then by row, must be
// closed under transposition and must not contain duplicates. An Omega that
// violates any of these is rejected, never repaired.
//
// Both variants are selections, so A A^* = I holds bit-exactly and the
// spectrum of A^*A is contained in {0, 1}.
class LinearMap {
 public:
  enum class Kind { kFullVectorization, kSymmetricSampling };

  static LinearMap FullVectorization(int n);
  static LinearMap SymmetricSampling(int n, std::vector<IndexPair> omega);
  // Reads a two-column CSV of 1-based (row, col) pairs. A header line is
  // allowed if it does not parse as numbers.
  static LinearMap SymmetricSamplingFromCsv(int n,
                                            const std::filesystem::path& path);

  Kind kind() const { return kind_; }
  bool is_full_vectorization() const {
    return kind_ == Kind::kFullVectorization;
  }
  int n() const { return n_; }
  int q() const { return q_; }
  // Empty for full vectorization.
  const std::vector<IndexPair>& omega() const { return omega_; }

  // A(U).
  Vector Apply(const Matrix& u) const;
  // A(X Y^T) without forming X Y^T when A is a sampling map.
  Vector ApplyProduct(const Matrix& x, const Matrix& y) const;
  // A^*(v).
  Matrix Adjoint(const Vector& v) const;
  // A^*A(U): identity for full vectorization, support mask for sampling.
  Matrix GramApply(const Matrix& u) const;
  void GramApplyInPlace(Matrix& u) const;
  // (alpha I + beta A^*A)^{-1}(W) = W / alpha - beta / (alpha (alpha + beta))
  // A^*A(W). Throws NumericalError when alpha (alpha + beta) == 0.
  Matrix ShiftedInverseApply(double alpha, double beta, const Matrix& w) const;

 private:
  LinearMap(Kind kind, int n) : kind_(kind), n_(n) {}

  void RequireSquare(const Matrix& u, const char* what) const;

  Kind kind_;
  int n_ = 0;
  int q_ = 0;
  std::vector<IndexPair> omega_;
  // mask_(i, j) == 1 iff (i+1, j+1) is in Omega. Empty for full vectorization.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask_;
};

// ||I - beta/(alpha+beta) A^*A||^2 = max{1, alpha^2 / (alpha+beta)^2}.
double Rho(double alpha, double beta);

// Smallest gamma >= 0 with (alpha + gamma) I + beta A^*A positive
// semidefinite: max{0, -alpha, -(alpha + beta)}.
double GammaMin(double alpha, double beta);

}  // namespace gsmf

#endif  // GSMF_OPERATORS_H_
