#include "gsmf/operators.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "gsmf/errors.h"

namespace gsmf {
namespace {

bool ColumnMajorLess(const IndexPair& a, const IndexPair& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

}  // namespace

LinearMap LinearMap::FullVectorization(int n) {
  if (n < 1) throw ParameterError("map dimension n must be >= 1");
  LinearMap map(Kind::kFullVectorization, n);
  map.q_ = n * n;
  return map;
}

LinearMap LinearMap::SymmetricSampling(int n, std::vector<IndexPair> omega) {
  if (n < 1) throw ParameterError("map dimension n must be >= 1");
  LinearMap map(Kind::kSymmetricSampling, n);
  map.mask_.setConstant(n, n, false);
  for (std::size_t t = 0; t < omega.size(); ++t) {
    const IndexPair& p = omega[t];
    if (p.row < 1 || p.row > n || p.col < 1 || p.col > n) {
      std::ostringstream msg;
      msg << "Omega entry " << t << " = (" << p.row << ", " << p.col
          << ") is outside 1.." << n;
      throw ParameterError(msg.str());
    }
    if (t > 0 && !ColumnMajorLess(omega[t - 1], p)) {
      std::ostringstream msg;
      msg << "Omega is not sorted by (column, row) or has duplicates at entry "
          << t << " = (" << p.row << ", " << p.col << ")";
      throw ParameterError(msg.str());
    }
    map.mask_(p.row - 1, p.col - 1) = true;
  }
  for (const IndexPair& p : omega) {
    if (!map.mask_(p.col - 1, p.row - 1)) {
      std::ostringstream msg;
      msg << "Omega is not symmetric: (" << p.row << ", " << p.col
          << ") present but (" << p.col << ", " << p.row << ") missing";
      throw ParameterError(msg.str());
    }
  }
  map.q_ = static_cast<int>(omega.size());
  map.omega_ = std::move(omega);
  return map;
}

LinearMap LinearMap::SymmetricSamplingFromCsv(
    int n, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open Omega file " + path.string());
  std::vector<IndexPair> omega;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    IndexPair p;
    if (!(fields >> p.row >> p.col)) {
      if (line_no == 1 && omega.empty()) continue;  // header
      throw ParameterError("Omega file " + path.string() + ": bad line " +
                           std::to_string(line_no));
    }
    omega.push_back(p);
  }
  return SymmetricSampling(n, std::move(omega));
}

void LinearMap::RequireSquare(const Matrix& u, const char* what) const {
  RequireShape(u, n_, n_, what);
}

Vector LinearMap::Apply(const Matrix& u) const {
  RequireSquare(u, "A(U) input");
  if (is_full_vectorization()) {
    return Eigen::Map<const Vector>(u.data(), u.size());
  }
  Vector out(q_);
  for (int t = 0; t < q_; ++t) {
    out(t) = u(omega_[t].row - 1, omega_[t].col - 1);
  }
  return out;
}

Vector LinearMap::ApplyProduct(const Matrix& x, const Matrix& y) const {
  if (x.rows() != n_ || y.rows() != n_ || x.cols() != y.cols()) {
    throw DimensionError("A(X Y^T): expected X, Y of shape " +
                         ShapeString(n_, x.cols()) + ", got " +
                         ShapeString(x.rows(), x.cols()) + " and " +
                         ShapeString(y.rows(), y.cols()));
  }
  if (is_full_vectorization()) {
    Matrix p = x * y.transpose();
    return Eigen::Map<const Vector>(p.data(), p.size());
  }
  Vector out(q_);
  for (int t = 0; t < q_; ++t) {
    out(t) = x.row(omega_[t].row - 1).dot(y.row(omega_[t].col - 1));
  }
  return out;
}

Matrix LinearMap::Adjoint(const Vector& v) const {
  if (v.size() != q_) {
    throw DimensionError("A^*(v): expected length " + std::to_string(q_) +
                         ", got " + std::to_string(v.size()));
  }
  if (is_full_vectorization()) {
    return Eigen::Map<const Matrix>(v.data(), n_, n_);
  }
  Matrix out = Matrix::Zero(n_, n_);
  for (int t = 0; t < q_; ++t) {
    out(omega_[t].row - 1, omega_[t].col - 1) = v(t);
  }
  return out;
}

Matrix LinearMap::GramApply(const Matrix& u) const {
  Matrix out = u;
  GramApplyInPlace(out);
  return out;
}

void LinearMap::GramApplyInPlace(Matrix& u) const {
  RequireSquare(u, "A^*A(U) input");
  if (is_full_vectorization()) return;
  u = mask_.select(u, Matrix::Zero(n_, n_));
}

Matrix LinearMap::ShiftedInverseApply(double alpha, double beta,
                                      const Matrix& w) const {
  RequireSquare(w, "shifted inverse input");
  const double det = alpha * (alpha + beta);
  if (det == 0.0) {
    throw NumericalError(
        "alpha I + beta A^*A is singular: alpha (alpha + beta) = 0");
  }
  const double coef = beta / det;
  Matrix out = w / alpha;
  if (is_full_vectorization()) {
    out -= coef * w;
  } else {
    out -= coef * mask_.select(w, Matrix::Zero(n_, n_));
  }
  return out;
}

double Rho(double alpha, double beta) {
  const double s = alpha + beta;
  if (s == 0.0) throw ParameterError("rho: alpha + beta must be nonzero");
  return std::max(1.0, (alpha * alpha) / (s * s));
}

double GammaMin(double alpha, double beta) {
  return std::max({0.0, -alpha, -(alpha + beta)});
}

}  // namespace gsmf
