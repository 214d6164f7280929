#include "kcompound/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kcompound/combinat.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"

namespace kcompound {

namespace {

void require_square(const DenseMatrix& a, const char* op) {
  if (a.empty() || !a.is_square()) throw DomainError(std::string(op) + ": matrix must be square");
}

DenseMatrix symmetric_part(const DenseMatrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::L1:
      return "L1";
    case MeasureKind::L2:
      return "L2";
    case MeasureKind::LInf:
      return "LInf";
  }
  return "?";
}

std::optional<MeasureKind> parse_measure_kind(std::string_view text) noexcept {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "l1" || lower == "1") return MeasureKind::L1;
  if (lower == "l2" || lower == "2") return MeasureKind::L2;
  if (lower == "linf" || lower == "inf" || lower == "infinity" || lower == "l_inf") return MeasureKind::LInf;
  return std::nullopt;
}

double vector_norm(std::span<const double> x, MeasureKind kind) {
  if (x.empty()) throw DomainError("vector_norm: empty vector");
  switch (kind) {
    case MeasureKind::L1:
      return std::accumulate(x.begin(), x.end(), 0.0, [](double s, double v) { return s + std::abs(v); });
    case MeasureKind::L2: {
      // Scaled to avoid overflow in the squares.
      double scale = 0.0;
      for (double v : x) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) s += (v / scale) * (v / scale);
      return scale * std::sqrt(s);
    }
    case MeasureKind::LInf: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

double matrix_norm(const DenseMatrix& a, MeasureKind kind) {
  if (a.empty()) throw DomainError("matrix_norm: empty matrix");
  switch (kind) {
    case MeasureKind::L1: {
      double best = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case MeasureKind::L2:
      return singular_values(a).front();
    case MeasureKind::LInf: {
      double best = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
  }
  return 0.0;
}

double measure(const DenseMatrix& a, MeasureKind kind) {
  require_square(a, "measure");
  const std::size_t n = a.rows();
  switch (kind) {
    case MeasureKind::L1: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        double s = a(j, j);
        for (std::size_t i = 0; i < n; ++i)
          if (i != j) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case MeasureKind::L2:
      return symmetric_eigenvalues(symmetric_part(a)).front();
    case MeasureKind::LInf: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        double s = a(i, i);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
  }
  return 0.0;
}

double compound_measure(const DenseMatrix& a, std::size_t k, MeasureKind kind) {
  require_square(a, "compound_measure");
  const std::size_t n = a.rows();
  check_k_range(k, n);
  if (k == n) return a.trace();

  if (kind == MeasureKind::L2) {
    const auto ev = symmetric_eigenvalues(symmetric_part(a));
    return std::accumulate(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
  }

  // Off-diagonal abs mass contributed by each base index p: column sums
  // (L1) or row sums (LInf) restricted to rows/columns outside alpha.
  const bool by_column = kind == MeasureKind::L1;
  auto offdiag = [&](std::size_t p, std::size_t q) { return by_column ? std::abs(a(q, p)) : std::abs(a(p, q)); };

  std::vector<std::size_t> alpha(k);
  std::iota(alpha.begin(), alpha.end(), std::size_t{1});
  std::vector<bool> in_alpha(n + 1, false);
  double best = -std::numeric_limits<double>::infinity();
  do {
    std::fill(in_alpha.begin(), in_alpha.end(), false);
    for (std::size_t v : alpha) in_alpha[v] = true;
    double s = 0.0;
    for (std::size_t v : alpha) {
      s += a(v - 1, v - 1);
      for (std::size_t j = 1; j <= n; ++j)
        if (!in_alpha[j]) s += offdiag(v - 1, j - 1);
    }
    best = std::max(best, s);
  } while (next_lex(alpha, n));
  return best;
}

}  // namespace kcompound
