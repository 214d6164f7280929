#pragma once

#include <complex>
#include <vector>

#include "kcompound/dense_matrix.hpp"

namespace kcompound {

/// Determinant by LU factorization with partial pivoting.
double determinant(const DenseMatrix& a);

/// Inverse by LU with partial pivoting; throws DomainError when singular.
DenseMatrix inverse(const DenseMatrix& a);

/// Eigenvalues of a general real square matrix (unordered).
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a);

/// Eigenvalues of the symmetric part of a symmetric matrix, in descending order.
/// Only the lower triangle is read.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& s);

/// Singular values in descending order.
std::vector<double> singular_values(const DenseMatrix& a);

/// Principal real power a^p. Requires a spectrum off the closed negative
/// real axis; otherwise throws UnsupportedDomainError naming the eigenvalue.
DenseMatrix real_matrix_power(const DenseMatrix& a, double p);

}  // namespace kcompound
