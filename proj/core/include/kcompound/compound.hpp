#pragma once

#include <cstddef>

#include "kcompound/combinat.hpp"
#include "kcompound/dense_matrix.hpp"

namespace kcompound {

enum class CompoundKind { Multiplicative, Additive };

/// A k-th compound of an n x m base matrix. Rows and columns are indexed by
/// Q(k, n) and Q(k, m) in lexicographic order (see rank/unrank).
struct CompoundMatrix {
  std::size_t base_rows = 0;
  std::size_t base_cols = 0;
  std::size_t order = 0;
  CompoundKind kind = CompoundKind::Multiplicative;
  DenseMatrix matrix;
};

/// det A[rows|cols]. Row and column sets must have equal cardinality and fit A.
double minor(const DenseMatrix& a, const IndexSet& rows, const IndexSet& cols);

/// The C(n,k) x C(m,k) matrix of all k x k minors of A.
CompoundMatrix mult_compound(const DenseMatrix& a, std::size_t k);

/// k-additive compound of a square matrix, assembled entry by entry from the
/// explicit index-set rule (diagonal sums and single-index swaps with sign
/// (-1)^(l+m)); no differentiation is involved.
CompoundMatrix add_compound(const DenseMatrix& a, std::size_t k);

/// Independent route to the k-additive compound: the entries of (I + eps A)^(k)
/// are polynomials of degree <= k in eps, so sampling at k+1 nodes and
/// interpolating recovers the linear coefficient exactly (up to rounding).
/// `node_spacing` <= 0 selects the default 1/(k+1).
CompoundMatrix add_compound_oracle(const DenseMatrix& a, std::size_t k, double node_spacing = 0.0);

DenseMatrix kron_product(const DenseMatrix& a, const DenseMatrix& b);

/// A (x) I_q + I_p (x) B for square A (p x p) and B (q x q).
DenseMatrix kron_sum(const DenseMatrix& a, const DenseMatrix& b);

/// Real-order additive compound. For alpha = k + s with s in (0,1):
/// ((1-s) A^[k]) (+) (s A^[k+1]), of size C(n,k) C(n,k+1). Integral alpha
/// returns A^[alpha].
DenseMatrix alpha_add_compound(const DenseMatrix& a, double alpha);

/// Real-order multiplicative compound (A^(k))^(1-s) (x) (A^(k+1))^s using
/// principal real matrix powers. Integral alpha returns A^(alpha).
/// Throws DomainError for singular A and UnsupportedDomainError when a
/// compound has an eigenvalue on the closed negative real axis.
DenseMatrix alpha_mult_compound(const DenseMatrix& a, double alpha);

/// Splits alpha into (k, s) with k = floor(alpha), s = alpha - k, after
/// checking 1 <= alpha <= n.
struct AlphaSplit {
  std::size_t k;
  double s;
};
AlphaSplit split_alpha(double alpha, std::size_t n);

}  // namespace kcompound
