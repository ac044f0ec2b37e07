#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "expflow/error.hpp"
#include "expflow/random.hpp"
#include "expflow/real_jordan.hpp"

namespace expflow {
namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

void expect_parts(const JordanDecomposition& p, const Matrix& n, const Matrix& h, const Matrix& e) {
  EXPECT_LE((p.a_n - n).norm(), 1e-12);
  EXPECT_LE((p.a_h - h).norm(), 1e-12);
  EXPECT_LE((p.a_e - e).norm(), 1e-12);
  EXPECT_LE((p.a_s - h - e).norm(), 1e-12);
}

TEST(RealJordan, Nilpotent) {
  const Matrix a = m2(0, 1, 0, 0);
  expect_parts(real_jordan(a), a, Matrix::Zero(2, 2), Matrix::Zero(2, 2));
}

TEST(RealJordan, RotationGenerator) {
  const Matrix a = m2(0, -1, 1, 0);
  expect_parts(real_jordan(a), Matrix::Zero(2, 2), Matrix::Zero(2, 2), a);
}

TEST(RealJordan, RotationScaling) {
  const Matrix a = m2(1, -1, 1, 1);
  // Eigenvalues 1 +- i from an independent complex solver.
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.cast<std::complex<double>>());
  for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(es.eigenvalues()[i].real(), 1.0, 1e-14);
  expect_parts(real_jordan(a), Matrix::Zero(2, 2), Matrix::Identity(2, 2), m2(0, -1, 1, 0));
}

TEST(RealJordan, ZeroMatrix) {
  const auto r = real_jordan_spectral(Matrix::Zero(3, 3));
  EXPECT_TRUE(verify_jordan(Matrix::Zero(3, 3), r).passed());
  EXPECT_EQ(max_abs(r.parts.a_s), 0.0);
}

TEST(RealJordan, JordanBlockWithShift) {
  Matrix a = Matrix::Zero(4, 4);
  a.diagonal() << 2, 2, 2, -1;
  a(0, 1) = 1;
  a(1, 2) = 1;
  const auto r = real_jordan_spectral(a);
  Matrix expected_h = Matrix::Zero(4, 4);
  expected_h.diagonal() << 2, 2, 2, -1;
  EXPECT_LE((r.parts.a_h - expected_h).norm(), 1e-9);
  EXPECT_LE(max_abs(r.parts.a_e), 1e-9);
  EXPECT_TRUE(verify_jordan(a, r).passed());
}

TEST(RealJordan, RandomInvariants) {
  Rng rng(100);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.integer(4, 6));
    const Matrix a = random_separated_matrix(rng, n, 0.5, trial % 3 == 0);
    const auto r = real_jordan_spectral(a);
    const auto check = verify_jordan(a, r);
    EXPECT_TRUE(check.passed()) << "trial " << trial << " nil " << check.nilpotency << " comm "
                                << check.commutator << " ss " << check.semisimplicity;
  }
}

TEST(RealJordan, ProjectorsResolveTheIdentity) {
  Rng rng(101);
  const Matrix a = random_separated_matrix(rng, 6, 0.5, true);
  const auto r = real_jordan_spectral(a);
  Matrix sum = Matrix::Zero(6, 6);
  for (const auto& c : r.clusters) {
    EXPECT_LE((c.projector * c.projector - c.projector).norm(), 1e-9);
    EXPECT_LE((c.projector * a - a * c.projector).norm(), 1e-9 * a.norm());
    sum += c.projector;
  }
  EXPECT_LE((sum - Matrix::Identity(6, 6)).norm(), 1e-9);
}

TEST(RealJordan, ConjugationEquivariance) {
  Rng rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(rng.integer(4, 6));
    const Matrix a = random_separated_matrix(rng, n, 0.5, trial % 2 == 0);
    const Matrix s = random_conditioned(rng, n, 1e3);
    const Matrix s_inv = s.inverse();
    const auto p = real_jordan(a);
    const auto q = real_jordan(s * a * s_inv);
    const auto rel = [&](const Matrix& x, const Matrix& y) {
      return (s * x * s_inv - y).norm() / std::max(1.0, (s * a * s_inv).norm());
    };
    EXPECT_LE(rel(p.a_n, q.a_n), 1e-6);
    EXPECT_LE(rel(p.a_h, q.a_h), 1e-6);
    EXPECT_LE(rel(p.a_e, q.a_e), 1e-6);
  }
}

TEST(RealJordan, CommutantOfAIsCommutantOfParts) {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_separated_matrix(rng, 5, 0.5, trial % 2 == 1);
    const Matrix b = rng.normal() * Matrix::Identity(5, 5) + rng.normal() * a + rng.normal() * a * a +
                     0.1 * rng.normal() * a * a * a;
    ASSERT_LE((a * b - b * a).norm(), 1e-10 * a.norm() * b.norm());
    const auto p = real_jordan(a);
    const double tol = 1e-8 * b.norm() * std::max(1.0, a.norm());
    for (const Matrix* part : {&p.a_n, &p.a_h, &p.a_e}) {
      EXPECT_LE((b * *part - *part * b).norm(), tol);
      EXPECT_LE((a * *part - *part * a).norm(), tol);
    }
  }
}

TEST(RealJordan, DefectiveBlockHasNilpotentPart) {
  Rng rng(104);
  const Matrix a = random_separated_matrix(rng, 5, 0.5, true);
  const auto p = real_jordan(a);
  EXPECT_GT(p.a_n.norm(), 1e-3);
  EXPECT_LE((p.a_n * p.a_n).norm(), 1e-8 * a.norm());
}

TEST(RealJordan, CloseEigenvaluesRejected) {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 1.0, 1.0 + 5e-4, -2.0;
  try {
    real_jordan(a);
    FAIL() << "expected ill-conditioned-spectrum";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIllConditionedSpectrum);
  }
}

TEST(RealJordan, InvalidInput) {
  EXPECT_THROW(real_jordan(Matrix(2, 3)), Error);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = NAN;
  EXPECT_THROW(real_jordan(bad), Error);
}

}  // namespace
}  // namespace expflow
