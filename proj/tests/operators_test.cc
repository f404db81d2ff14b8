#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gsmf/errors.h"
#include "gsmf/operators.h"
#include "gsmf/random.h"
#include "support/oracles.h"

namespace gsmf {
namespace {

Matrix M2() {
  Matrix u(2, 2);
  u << 1, 2, 3, 4;
  return u;
}

LinearMap OffDiagonal() { return LinearMap::SymmetricSampling(2, {{2, 1}, {1, 2}}); }

TEST(FullVectorization, ApplyIsColumnMajorVec) {
  const Vector v = LinearMap::FullVectorization(2).Apply(M2());
  EXPECT_EQ(v, (Vector(4) << 1, 3, 2, 4).finished());
}

TEST(FullVectorization, AdjointInvertsVec) {
  const Vector v = (Vector(4) << 1, 3, 2, 4).finished();
  EXPECT_EQ(LinearMap::FullVectorization(2).Adjoint(v), M2());
}

TEST(FullVectorization, GramIsIdentity) {
  EXPECT_EQ(LinearMap::FullVectorization(2).GramApply(M2()), M2());
}

TEST(SymmetricSampling, ApplySelectsInColumnOrder) {
  EXPECT_EQ(OffDiagonal().Apply(M2()), (Vector(2) << 3, 2).finished());
}

TEST(SymmetricSampling, AdjointScatters) {
  Matrix expected(2, 2);
  expected << 0, 2, 3, 0;
  EXPECT_EQ(OffDiagonal().Adjoint((Vector(2) << 3, 2).finished()), expected);
  EXPECT_EQ(OffDiagonal().GramApply(M2()), expected);
}

TEST(LinearMap, ZeroMapsToZero) {
  EXPECT_TRUE(OffDiagonal().Apply(Matrix::Zero(2, 2)).isZero(0));
  EXPECT_TRUE(LinearMap::FullVectorization(3).Apply(Matrix::Zero(3, 3)).isZero(0));
  EXPECT_TRUE(OffDiagonal().Adjoint(Vector::Zero(2)).isZero(0));
}

TEST(LinearMap, DimensionErrors) {
  EXPECT_THROW(LinearMap::FullVectorization(2).Apply(Matrix::Zero(3, 3)), DimensionError);
  EXPECT_THROW(LinearMap::FullVectorization(2).Adjoint(Vector::Zero(3)), DimensionError);
  EXPECT_THROW(OffDiagonal().Adjoint(Vector::Zero(3)), DimensionError);
}

TEST(SymmetricSampling, RejectsMalformedOmega) {
  EXPECT_THROW(LinearMap::SymmetricSampling(2, {{2, 1}}), ParameterError);
  EXPECT_THROW(LinearMap::SymmetricSampling(2, {{1, 2}, {2, 1}}), ParameterError);
  EXPECT_THROW(LinearMap::SymmetricSampling(2, {{1, 1}, {1, 1}}), ParameterError);
  EXPECT_THROW(LinearMap::SymmetricSampling(2, {{3, 1}, {1, 3}}), ParameterError);
}

TEST(SymmetricSampling, ReadsOmegaCsv) {
  const auto path = std::filesystem::temp_directory_path() / "gsmf_omega_test.csv";
  std::ofstream(path) << "row,col\n1,1\n2,1\n1,2\n";
  const LinearMap map = LinearMap::SymmetricSamplingFromCsv(2, path);
  EXPECT_EQ(map.q(), 3);
  EXPECT_EQ(map.Apply(M2()), (Vector(3) << 1, 3, 2).finished());
  std::filesystem::remove(path);
}

TEST(LinearMap, MatchesNaiveSelection) {
  Rng rng(3);
  const auto omega = oracle::RandomSymmetricOmega(7, 0.4, rng);
  const LinearMap map = LinearMap::SymmetricSampling(7, omega);
  const Matrix u = rng.NormalMatrix(7, 7);
  EXPECT_EQ(map.Apply(u), oracle::Sample(u, omega));
  const Vector v = rng.NormalMatrix(map.q(), 1);
  EXPECT_EQ(map.Adjoint(v), oracle::Scatter(7, v, omega));
  EXPECT_EQ(LinearMap::FullVectorization(7).Apply(u), oracle::Vec(u));
  const Matrix x = rng.NormalMatrix(7, 3), y = rng.NormalMatrix(7, 3);
  EXPECT_LE((map.ApplyProduct(x, y) - oracle::Sample(oracle::Product(x, y), omega))
                .cwiseAbs().maxCoeff(), 1e-14);
}

TEST(LinearMap, AdjointAndIsometryIdentities) {
  Rng rng(5);
  const int n = 9;
  for (const LinearMap& map :
       {LinearMap::FullVectorization(n),
        LinearMap::SymmetricSampling(n, oracle::RandomSymmetricOmega(n, 0.3, rng))}) {
    for (int t = 0; t < 100; ++t) {
      const Matrix u = rng.NormalMatrix(n, n);
      const Vector v = rng.NormalMatrix(map.q(), 1);
      EXPECT_NEAR(map.Apply(u).dot(v), (u.array() * map.Adjoint(v).array()).sum(), 1e-12);
      EXPECT_EQ(map.Apply(map.Adjoint(v)), v);
      EXPECT_NEAR(map.Apply(u).squaredNorm(),
                  (u.array() * map.GramApply(u).array()).sum(), 1e-12);
    }
  }
}

TEST(SymmetricSampling, SkewIdentity) {
  Rng rng(8);
  const LinearMap map =
      LinearMap::SymmetricSampling(10, oracle::RandomSymmetricOmega(10, 0.5, rng));
  for (int t = 0; t < 50; ++t) {
    const Matrix u = rng.NormalMatrix(10, 10);
    const Matrix g = map.GramApply(u);
    EXPECT_LE(((g - g.transpose()) - map.GramApply(u - u.transpose())).cwiseAbs().maxCoeff(),
              1e-14);
  }
}

TEST(ShiftedInverse, FullVectorizationQuarter) {
  const Matrix w = M2();
  EXPECT_TRUE(LinearMap::FullVectorization(2).ShiftedInverseApply(2, 2, w).isApprox(0.25 * w));
}

TEST(ShiftedInverse, SamplingScalesOnAndOffSupport) {
  Matrix w = Matrix::Constant(2, 2, 4.0);
  const Matrix s = OffDiagonal().ShiftedInverseApply(2, 2, w);
  EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 2.0);
}

TEST(ShiftedInverse, IdentityCase) {
  EXPECT_EQ(OffDiagonal().ShiftedInverseApply(1, 0, M2()), M2());
}

TEST(ShiftedInverse, SingularThrows) {
  EXPECT_THROW(OffDiagonal().ShiftedInverseApply(0, 2, M2()), NumericalError);
  EXPECT_THROW(OffDiagonal().ShiftedInverseApply(2, -2, M2()), NumericalError);
}

TEST(ShiftedInverse, RecoversW) {
  Rng rng(9);
  const LinearMap map =
      LinearMap::SymmetricSampling(8, oracle::RandomSymmetricOmega(8, 0.5, rng));
  for (double alpha : {0.2, 0.6, 0.8, 2.0}) {
    const double beta = alpha / (alpha - 1.0);
    const Matrix w = rng.NormalMatrix(8, 8);
    const Matrix s = map.ShiftedInverseApply(alpha, beta, w);
    EXPECT_LE((alpha * s + beta * map.GramApply(s) - w).norm(), 1e-12 * w.norm());
  }
}

TEST(Rho, ClosedForm) {
  EXPECT_DOUBLE_EQ(Rho(2, 2), 1.0);
  EXPECT_NEAR(Rho(0.2, -0.25), 16.0, 1e-9);
  EXPECT_DOUBLE_EQ(Rho(1, 0), 1.0);
  EXPECT_THROW(Rho(1, -1), ParameterError);
}

TEST(GammaMin, ClosedForm) {
  EXPECT_DOUBLE_EQ(GammaMin(2, 2), 0.0);
  EXPECT_NEAR(GammaMin(0.6, -1.5), 0.9, 1e-15);
  EXPECT_NEAR(GammaMin(0.2, -0.25), 0.05, 1e-15);
}

}  // namespace
}  // namespace gsmf
