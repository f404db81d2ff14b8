// Independent reference implementations used as test oracles. Everything here
// is written with explicit loops and shares no code with the library beyond
// the Matrix type.
#ifndef GSMF_TESTS_ORACLES_H_
#define GSMF_TESTS_ORACLES_H_

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gsmf/operators.h"
#include "gsmf/types.h"

namespace gsmf::oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Column-major vec.
inline Vector Vec(const Matrix& u) {
  Vector v(u.size());
  int k = 0;
  for (int j = 0; j < u.cols(); ++j) {
    for (int i = 0; i < u.rows(); ++i) v(k++) = u(i, j);
  }
  return v;
}

inline Vector Sample(const Matrix& u, const std::vector<IndexPair>& omega) {
  Vector v(omega.size());
  for (std::size_t k = 0; k < omega.size(); ++k) {
    v(k) = u(omega[k].row - 1, omega[k].col - 1);
  }
  return v;
}

inline Matrix Scatter(int n, const Vector& v, const std::vector<IndexPair>& omega) {
  Matrix u = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    u(omega[k].row - 1, omega[k].col - 1) = v(k);
  }
  return u;
}

inline Matrix Product(const Matrix& x, const Matrix& y) {
  Matrix p = Matrix::Zero(x.rows(), y.rows());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < y.rows(); ++j) {
      double s = 0.0;
      for (int k = 0; k < x.cols(); ++k) s += x(i, k) * y(j, k);
      p(i, j) = s;
    }
  }
  return p;
}

// Random symmetric Omega of the given density, sorted by column then row.
template <typename Rng>
std::vector<IndexPair> RandomSymmetricOmega(int n, double density, Rng& rng) {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> in(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      in(i, j) = in(j, i) = rng.Uniform() < density;
    }
  }
  std::vector<IndexPair> omega;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (in(i, j)) omega.push_back({i + 1, j + 1});
    }
  }
  return omega;
}

enum class Reg { kZero, kNonneg, kL1, kNonnegL1 };

inline double RegEntry(Reg reg, double w, double s) {
  switch (reg) {
    case Reg::kZero: return 0.0;
    case Reg::kNonneg: return s < 0.0 ? kInf : 0.0;
    case Reg::kL1: return w * std::abs(s);
    case Reg::kNonnegL1: return s < 0.0 ? kInf : w * s;
  }
  return 0.0;
}

inline double RegSum(Reg reg, double w, const Matrix& x) {
  double s = 0.0;
  for (int j = 0; j < x.cols(); ++j) {
    for (int i = 0; i < x.rows(); ++i) s += RegEntry(reg, w, x(i, j));
  }
  return s;
}

// Minimizer of a convex extended-valued scalar function by ternary search on
// [lo, hi]. The function may only be +inf on a left part of the interval.
// Comparing values resolves the minimizer to about sqrt(eps) times its
// scale, so compare results at 1e-7.
inline double ArgMin1D(const std::function<double(double)>& h, double lo = -50.0,
                       double hi = 50.0) {
  for (int it = 0; it < 400 && hi - lo > 1e-13; ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    const double ha = h(a), hb = h(b);
    if (ha == kInf && hb == kInf) {
      lo = b;
    } else if (ha <= hb) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return 0.5 * (lo + hi);
}

// Coordinate-wise minimizer of t * Reg(P) + 1/2 ||P - W||^2.
inline Matrix ProxByGrid(Reg reg, double w, const Matrix& in, double t) {
  Matrix p(in.rows(), in.cols());
  for (int j = 0; j < in.cols(); ++j) {
    for (int i = 0; i < in.rows(); ++i) {
      const double c = in(i, j);
      p(i, j) = ArgMin1D([&](double s) {
        return t * RegEntry(reg, w, s) + 0.5 * (s - c) * (s - c);
      });
    }
  }
  return p;
}

// One hierarchical U sweep: column i, entry j minimizes
//   reg(s) + alpha/2 sum_l (s y_li + rest_jl - Z_jl)^2 + lambda/2 (s - y_ji)^2
//   + mu/2 (s - x_ji)^2
// with the other columns taken from the already updated U (k < i) and X (k > i).
inline Matrix HierarchicalUByGrid(Reg reg, double w, double alpha, double lambda,
                                  double mu, const Matrix& x, const Matrix& y,
                                  const Matrix& z) {
  const int n = x.rows(), r = x.cols();
  Matrix u = x;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) {
      auto h = [&](double s) {
        double val = RegEntry(reg, w, s);
        if (val == kInf) return kInf;
        for (int l = 0; l < n; ++l) {
          double e = s * y(l, i) - z(j, l);
          for (int k = 0; k < r; ++k) {
            if (k != i) e += u(j, k) * y(l, k);
          }
          val += 0.5 * alpha * e * e;
        }
        val += 0.5 * lambda * (s - y(j, i)) * (s - y(j, i));
        val += 0.5 * mu * (s - x(j, i)) * (s - x(j, i));
        return val;
      };
      u(j, i) = ArgMin1D(h);
    }
  }
  return u;
}

// V counterpart: minimizes reg(V) + alpha/2 ||U V^T - Z||^2
// + lambda/2 ||U - V||^2 + sigma/2 ||V - Y||^2 column by column.
inline Matrix HierarchicalVByGrid(Reg reg, double w, double alpha, double lambda,
                                  double sigma, const Matrix& u, const Matrix& y,
                                  const Matrix& z) {
  const int n = u.rows(), r = u.cols();
  Matrix v = y;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) {
      auto h = [&](double s) {
        double val = RegEntry(reg, w, s);
        if (val == kInf) return kInf;
        for (int l = 0; l < n; ++l) {
          double e = u(l, i) * s - z(l, j);
          for (int k = 0; k < r; ++k) {
            if (k != i) e += u(l, k) * v(j, k);
          }
          val += 0.5 * alpha * e * e;
        }
        val += 0.5 * lambda * (u(j, i) - s) * (u(j, i) - s);
        val += 0.5 * sigma * (s - y(j, i)) * (s - y(j, i));
        return val;
      };
      v(j, i) = ArgMin1D(h);
    }
  }
  return v;
}

// Central differences of f at x in every coordinate.
inline Matrix FiniteDifferenceGradient(const std::function<double(const Matrix&)>& f,
                                       const Matrix& x, double h = 1e-6) {
  Matrix g(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    for (int i = 0; i < x.rows(); ++i) {
      Matrix xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      g(i, j) = (f(xp) - f(xm)) / (2.0 * h);
    }
  }
  return g;
}

}  // namespace gsmf::oracle

#endif  // GSMF_TESTS_ORACLES_H_
