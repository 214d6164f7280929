#include "kcompound/signvar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "kcompound/combinat.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"

namespace kcompound {

namespace {

void require_nonempty(std::span<const double> x, const char* op) {
  if (x.empty()) throw DomainError(std::string(op) + ": empty vector");
}

}  // namespace

double default_zero_tolerance(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return 1e-9 * m;
}

std::size_t s_minus(std::span<const double> x, double zero_tol) {
  require_nonempty(x, "s_minus");
  std::size_t count = 0;
  int last = 0;
  for (double v : x) {
    if (std::abs(v) <= zero_tol) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last != 0 && sign != last) ++count;
    last = sign;
  }
  return count;
}

std::size_t s_plus(std::span<const double> x, double zero_tol) {
  require_nonempty(x, "s_plus");
  // best[s]: most changes so far with the current entry assigned sign s
  // (index 0 = negative, 1 = positive); -1 marks an infeasible state.
  long best[2] = {-1, -1};
  bool first = true;
  for (double v : x) {
    const bool free = std::abs(v) <= zero_tol;
    long next[2] = {-1, -1};
    for (int s = 0; s < 2; ++s) {
      if (!free && s != (v > 0 ? 1 : 0)) continue;
      if (first) {
        next[s] = 0;
        continue;
      }
      const long stay = best[s];
      const long flip = best[1 - s] >= 0 ? best[1 - s] + 1 : -1;
      next[s] = std::max(stay, flip);
    }
    best[0] = next[0];
    best[1] = next[1];
    first = false;
  }
  return static_cast<std::size_t>(std::max(best[0], best[1]));
}

SignVariationResult sign_variations(std::span<const double> x, double zero_tol) {
  return {s_minus(x, zero_tol), s_plus(x, zero_tol)};
}

bool in_cone(std::span<const double> x, std::size_t k, ConeVariant variant, double zero_tol) {
  check_k_range(k, x.size(), std::numeric_limits<std::size_t>::max());
  const std::size_t count = variant == ConeVariant::Closed ? s_minus(x, zero_tol) : s_plus(x, zero_tol);
  return count <= k - 1;
}

std::string_view to_string(SignRegularity s) noexcept {
  switch (s) {
    case SignRegularity::NonNegative:
      return "NonNegative";
    case SignRegularity::NonPositive:
      return "NonPositive";
    case SignRegularity::Positive:
      return "Positive";
    case SignRegularity::Negative:
      return "Negative";
    case SignRegularity::Mixed:
      return "Mixed";
  }
  return "?";
}

SignRegularity sign_regular_order(const DenseMatrix& a, std::size_t k, bool strict, double tol) {
  if (a.empty()) throw DomainError("sign_regular_order: empty matrix");
  check_k_range(k, std::min(a.rows(), a.cols()), std::numeric_limits<std::size_t>::max());

  bool all_pos = true, all_neg = true, all_nonneg = true, all_nonpos = true;
  DenseMatrix sub(k, k);
  std::vector<std::size_t> rows(k);
  std::iota(rows.begin(), rows.end(), std::size_t{1});
  do {
    std::vector<std::size_t> cols(k);
    std::iota(cols.begin(), cols.end(), std::size_t{1});
    do {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i] - 1, cols[j] - 1);
      const double m = determinant(sub);
      all_pos = all_pos && m > tol;
      all_neg = all_neg && m < -tol;
      all_nonneg = all_nonneg && m >= -tol;
      all_nonpos = all_nonpos && m <= tol;
      if (!all_nonneg && !all_nonpos) return SignRegularity::Mixed;
    } while (next_lex(cols, a.cols()));
  } while (next_lex(rows, a.rows()));

  if (strict && all_pos) return SignRegularity::Positive;
  if (strict && all_neg) return SignRegularity::Negative;
  if (all_nonneg) return SignRegularity::NonNegative;
  if (all_nonpos) return SignRegularity::NonPositive;
  return SignRegularity::Mixed;
}

}  // namespace kcompound
