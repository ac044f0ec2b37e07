#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "expflow/matrix_exp.hpp"
#include "expflow/random.hpp"

namespace expflow {
namespace {

Matrix random_matrix(Rng& rng, int n, double norm) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  }
  return a * (norm / a.norm());
}

double rel(const Matrix& x, const Matrix& ref) { return (x - ref).norm() / ref.norm(); }

TEST(MatrixExp, ZeroTimeIsIdentity) {
  Rng rng(1);
  const Matrix a = random_matrix(rng, 5, 3.0);
  EXPECT_EQ(matrix_exp(a, 0.0), Matrix::Identity(5, 5));
}

TEST(MatrixExp, QuarterRotation) {
  Matrix a(2, 2);
  a << 0, -1, 1, 0;
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_LE((matrix_exp(a, std::numbers::pi / 2) - expected).norm(), 1e-15);
}

TEST(MatrixExp, NilpotentIsFinitePolynomial) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  Matrix expected = Matrix::Identity(3, 3) + 2.0 * a + 2.0 * a * a;
  EXPECT_LE((matrix_exp(a, 2.0) - expected).norm(), 1e-14);
}

TEST(MatrixExp, InverseSelfOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.integer(2, 8));
    const Matrix a = random_matrix(rng, n, rng.uniform(0.1, 2.0));
    EXPECT_LE((matrix_exp(a) * matrix_exp(a, -1.0) - Matrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(MatrixExp, SymmetricAgainstEigendecomposition) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.integer(2, 7));
    Matrix a = random_matrix(rng, n, rng.uniform(0.5, 8.0));
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const Matrix ref = es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
                       es.eigenvectors().transpose();
    EXPECT_LE(rel(matrix_exp(a), ref), 1e-12);
  }
}

TEST(MatrixExp, SkewAgainstEigendecomposition) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.integer(2, 7));
    Matrix a = random_matrix(rng, n, rng.uniform(0.5, 8.0));
    a = 0.5 * (a - a.transpose()).eval();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.cast<std::complex<double>>());
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::MatrixXcd ref = v * es.eigenvalues().array().exp().matrix().asDiagonal() * v.inverse();
    EXPECT_LE(rel(matrix_exp(a), ref.real()), 1e-12);
    // exp of a skew matrix is orthogonal.
    const Matrix q = matrix_exp(a);
    EXPECT_LE((q.transpose() * q - Matrix::Identity(n, n)).norm(), 1e-13);
  }
}

TEST(MatrixExp, LargeNormUsesSquaring) {
  Matrix a(1, 1);
  a(0, 0) = 30.0;
  EXPECT_NEAR(matrix_exp(a)(0, 0) / std::exp(30.0), 1.0, 1e-13);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -40.0;
  d(1, 1) = 5.0;
  EXPECT_NEAR(matrix_exp(d)(1, 1) / std::exp(5.0), 1.0, 1e-13);
  EXPECT_LE(std::abs(matrix_exp(d)(0, 0) - std::exp(-40.0)), 1e-25);
}

TEST(MatrixExp, OneParameterGroup) {
  Rng rng(5);
  const Matrix a = random_matrix(rng, 4, 1.5);
  EXPECT_LE(rel(matrix_exp(a, 0.3) * matrix_exp(a, 0.9), matrix_exp(a, 1.2)), 1e-13);
}

}  // namespace
}  // namespace expflow
