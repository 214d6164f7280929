#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "kcompound/dense_matrix.hpp"

namespace kcompound {

enum class MeasureKind { L1, L2, LInf };

std::string_view to_string(MeasureKind kind) noexcept;
/// Accepts "l1", "l2", "linf" (case-insensitive; "inf" and "infinity" also map to LInf).
std::optional<MeasureKind> parse_measure_kind(std::string_view text) noexcept;

double vector_norm(std::span<const double> x, MeasureKind kind);

/// Induced matrix norm: max column abs-sum (L1), largest singular value (L2),
/// max row abs-sum (LInf).
double matrix_norm(const DenseMatrix& a, MeasureKind kind);

/// Matrix measure (logarithmic norm) induced by the vector norm `kind`.
double measure(const DenseMatrix& a, MeasureKind kind);

/// measure(A^[k], kind) evaluated without forming A^[k]:
///   L1   max over alpha in Q(k,n) of  sum_p a(ap,ap) + sum_{j not in alpha} sum_p |a(j,ap)|
///   L2   sum of the k largest eigenvalues of (A + A^T)/2
///   LInf the row-sum analogue of L1.
/// The compound space carries the norm of the same kind.
double compound_measure(const DenseMatrix& a, std::size_t k, MeasureKind kind);

}  // namespace kcompound
