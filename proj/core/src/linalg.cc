#include "gsmf/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gsmf/errors.h"

namespace gsmf {

std::string ShapeString(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void RequireShape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                  const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(std::string(what) + ": expected " +
                         ShapeString(rows, cols) + ", got " +
                         ShapeString(m.rows(), m.cols()));
  }
}

double SpectralNormSquaredFromGram(const Matrix& gram) {
  if (gram.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigensolve of Gram matrix failed");
  }
  return std::max(0.0, eig.eigenvalues().maxCoeff());
}

double SpectralNormSquared(const Matrix& y) {
  return SpectralNormSquaredFromGram(y.transpose() * y);
}

double PowerIterationNorm(const Matrix& b, const PowerIterationOptions& opts) {
  if (b.size() == 0) return 0.0;
  Vector v = Vector::Ones(b.cols()).normalized();
  double estimate = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Vector w = b.transpose() * (b * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double prev = estimate;
    estimate = std::sqrt(norm);
    if (std::abs(estimate - prev) <= opts.relative_tolerance * estimate) break;
  }
  return (b * v).norm();
}

double MinEigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolve failed");
  }
  return eig.eigenvalues().minCoeff();
}

double RelativeAsymmetry(const Matrix& b) {
  if (b.size() == 0) return 0.0;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (b - b.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace gsmf
