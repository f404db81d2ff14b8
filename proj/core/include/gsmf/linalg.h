#ifndef GSMF_LINALG_H_
#define GSMF_LINALG_H_

#include "gsmf/types.h"

namespace gsmf {

// ||Y||_2^2 = lambda_max(Y^T Y), from a symmetric eigensolve of the r x r
// Gram matrix.
double SpectralNormSquared(const Matrix& y);
double SpectralNormSquaredFromGram(const Matrix& gram);

struct PowerIterationOptions {
  int max_iterations = 1000;
  double relative_tolerance = 1e-10;
};

// ||B||_2 by power iteration on B^T B, started from the all-ones vector.
double PowerIterationNorm(const Matrix& b, const PowerIterationOptions& = {});

// Smallest eigenvalue of a symmetric matrix (dense solver).
double MinEigenvalue(const Matrix& symmetric);

// max_ij |B - B^T| / max(1, max_ij |B|).
double RelativeAsymmetry(const Matrix& b);

}  // namespace gsmf

#endif  // GSMF_LINALG_H_
