#ifndef GSMF_TYPES_H_
#define GSMF_TYPES_H_

#include <string>

#include <Eigen/Core>

namespace gsmf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// "rows x cols" for error messages.
std::string ShapeString(Eigen::Index rows, Eigen::Index cols);

// Throws DimensionError naming `what` unless m is rows x cols.
void RequireShape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                  const char* what);

}  // namespace gsmf

#endif  // GSMF_TYPES_H_
