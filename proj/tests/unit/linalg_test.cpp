#include <gtest/gtest.h>

#include <cmath>

#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"
#include "test_support.hpp"

using namespace kcompound;
using kcompound::testing::random_matrix;

TEST(DenseMatrix, ConstructionAndValidation) {
  const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(a.trace(), 5.0);
  EXPECT_THROW(DenseMatrix(0, 3), DomainError);
  EXPECT_THROW(DenseMatrix(2, 2, std::vector<double>{1.0, 2.0, 3.0}), DomainError);
  EXPECT_THROW(DenseMatrix(1, 1, std::nan("")), DomainError);
  EXPECT_THROW((DenseMatrix{{1.0, 2.0}, {3.0}}), DomainError);
}

TEST(DenseMatrix, Arithmetic) {
  const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const DenseMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_EQ(a * b, (DenseMatrix{{2.0, 1.0}, {4.0, 3.0}}));
  EXPECT_EQ(a + b, (DenseMatrix{{1.0, 3.0}, {4.0, 4.0}}));
  EXPECT_EQ(a - a, DenseMatrix(2, 2));
  EXPECT_EQ(2.0 * a, a + a);
  EXPECT_EQ(a.transpose()(0, 1), 3.0);
  const Vector x{1.0, -1.0};
  EXPECT_EQ(a * std::span<const double>(x), (Vector{-1.0, -1.0}));
  EXPECT_THROW(a * DenseMatrix(3, 3), DomainError);
}

TEST(Linalg, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n) {
    const DenseMatrix a = random_matrix(n, n, rng);
    const double want = kcompound::testing::cofactor_det(a);
    EXPECT_NEAR(determinant(a), want, 1e-12 * std::max(1.0, std::abs(want)));
  }
  EXPECT_EQ(determinant(DenseMatrix(3, 3)), 0.0);
}

TEST(Linalg, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(12);
  const DenseMatrix a = random_matrix(5, 5, rng) + 3.0 * DenseMatrix::identity(5);
  EXPECT_LT(max_abs_diff(inverse(a) * a, DenseMatrix::identity(5)), 1e-12);
  EXPECT_THROW(inverse(DenseMatrix(2, 2)), DomainError);
}

TEST(Linalg, SymmetricEigenvaluesDescending) {
  const DenseMatrix s{{2.0, 1.0}, {1.0, 2.0}};
  const auto ev = symmetric_eigenvalues(s);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 3.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
}

TEST(Linalg, SingularValuesMatchGramEigenvalues) {
  std::mt19937_64 rng(13);
  const DenseMatrix a = random_matrix(5, 5, rng);
  const auto sv = singular_values(a);
  const auto ev = symmetric_eigenvalues(a.transpose() * a);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(sv[i] * sv[i], ev[i], 1e-12);
}

TEST(Linalg, RealMatrixPowerScalarAndSquareRoot) {
  const DenseMatrix a = 4.0 * DenseMatrix::identity(3);
  EXPECT_LT(max_abs_diff(real_matrix_power(a, 0.5), 2.0 * DenseMatrix::identity(3)), 1e-14);
  const DenseMatrix m{{2.0, 1.0}, {0.0, 3.0}};
  const DenseMatrix r = real_matrix_power(m, 0.5);
  EXPECT_LT(max_abs_diff(r * r, m), 1e-12);
}

TEST(Linalg, RealMatrixPowerNonDiagonalizable) {
  const DenseMatrix jordan{{2.0, 1.0}, {0.0, 2.0}};
  const DenseMatrix r = real_matrix_power(jordan, 0.5);
  EXPECT_LT(max_abs_diff(r * r, jordan), 1e-10);
}

TEST(Linalg, RealMatrixPowerDomain) {
  EXPECT_THROW(real_matrix_power(DenseMatrix{{-1.0, 0.0}, {0.0, 2.0}}, 0.5), UnsupportedDomainError);
  EXPECT_THROW(real_matrix_power(DenseMatrix{{0.0, 0.0}, {0.0, 2.0}}, 0.5), DomainError);
  try {
    real_matrix_power(DenseMatrix{{-3.0, 0.0}, {0.0, 2.0}}, 0.5);
    FAIL();
  } catch (const UnsupportedDomainError& e) {
    EXPECT_NE(std::string(e.what()).find("-3"), std::string::npos) << e.what();
  }
}
