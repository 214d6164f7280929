#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "kcompound/dense_matrix.hpp"

namespace kcompound {

struct SignVariationResult {
  std::size_t s_minus = 0;
  std::size_t s_plus = 0;
};

/// Default zero band for floating-point trajectories: 1e-9 * |x|_inf.
double default_zero_tolerance(std::span<const double> x);

/// Sign changes after deleting entries with |x_i| <= zero_tol. s^-(0) = 0.
std::size_t s_minus(std::span<const double> x, double zero_tol = 0.0);

/// Largest number of sign changes over all +-1 fillings of the entries with
/// |x_i| <= zero_tol (exact, by dynamic programming over the fillings).
std::size_t s_plus(std::span<const double> x, double zero_tol = 0.0);

SignVariationResult sign_variations(std::span<const double> x, double zero_tol = 0.0);

enum class ConeVariant {
  Closed,  ///< P^k_-: s^-(x) <= k-1
  Open,    ///< P^k_+: s^+(x) <= k-1
};

bool in_cone(std::span<const double> x, std::size_t k, ConeVariant variant, double zero_tol = 0.0);

enum class SignRegularity { NonNegative, NonPositive, Positive, Negative, Mixed };

std::string_view to_string(SignRegularity s) noexcept;

/// Common sign of all k x k minors of A, with a band of width `tol` around 0.
/// With strict = true, Positive/Negative are reported when every minor is
/// beyond the band; otherwise the weak classification is returned.
SignRegularity sign_regular_order(const DenseMatrix& a, std::size_t k, bool strict, double tol = 0.0);

}  // namespace kcompound
