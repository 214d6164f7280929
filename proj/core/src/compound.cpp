#include "kcompound/compound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"

namespace kcompound {

namespace {

void require_square(const DenseMatrix& a, const char* op) {
  if (a.empty() || !a.is_square()) throw DomainError(std::string(op) + ": matrix must be square");
}

std::vector<std::size_t> first_tuple(std::size_t k) {
  std::vector<std::size_t> t(k);
  std::iota(t.begin(), t.end(), std::size_t{1});
  return t;
}

// Coefficient of x^1 in the Lagrange basis polynomial L_i for the given nodes.
std::vector<double> lagrange_linear_weights(const std::vector<double>& nodes) {
  const std::size_t m = nodes.size();
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> poly{1.0};  // coefficients, ascending powers
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double denom = nodes[i] - nodes[j];
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t p = 0; p < poly.size(); ++p) {
        next[p] += -nodes[j] * poly[p] / denom;
        next[p + 1] += poly[p] / denom;
      }
      poly = std::move(next);
    }
    weights[i] = poly.size() > 1 ? poly[1] : 0.0;
  }
  return weights;
}

bool numerically_singular(const DenseMatrix& a) {
  const auto sv = singular_values(a);
  return sv.back() <= 1e-14 * std::max(sv.front(), 1e-300);
}

}  // namespace

double minor(const DenseMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.k() != cols.k()) {
    throw DomainError("minor: row set has " + std::to_string(rows.k()) + " indices but column set has " +
                      std::to_string(cols.k()));
  }
  if (rows.n() > a.rows() || cols.n() > a.cols()) {
    throw DomainError("minor: index sets exceed the matrix dimensions");
  }
  const std::size_t k = rows.k();
  DenseMatrix sub(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i] - 1, cols[j] - 1);
  return determinant(sub);
}

CompoundMatrix mult_compound(const DenseMatrix& a, std::size_t k) {
  if (a.empty()) throw DomainError("mult_compound: empty matrix");
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  check_k_range(k, std::min(n, m), kDefaultMaxDimension);
  check_k_range(k, std::max(n, m), kDefaultMaxDimension);

  const std::size_t r = binomial(n, k);
  const std::size_t c = binomial(m, k);
  CompoundMatrix out{n, m, k, CompoundKind::Multiplicative, DenseMatrix(r, c)};
  if (k == 1) {
    out.matrix = a;
    return out;
  }

  DenseMatrix sub(k, k);
  auto alpha = first_tuple(k);
  for (std::size_t ri = 0; ri < r; ++ri, next_lex(alpha, n)) {
    auto beta = first_tuple(k);
    for (std::size_t ci = 0; ci < c; ++ci, next_lex(beta, m)) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(alpha[i] - 1, beta[j] - 1);
      out.matrix(ri, ci) = determinant(sub);
    }
  }
  return out;
}

CompoundMatrix add_compound(const DenseMatrix& a, std::size_t k) {
  require_square(a, "add_compound");
  const std::size_t n = a.rows();
  check_k_range(k, n);
  const std::size_t r = binomial(n, k);
  CompoundMatrix out{n, n, k, CompoundKind::Additive, DenseMatrix(r, r)};
  if (k == 1) {
    out.matrix = a;
    return out;
  }

  // Only pairs (alpha, beta) that coincide or differ in exactly one index are
  // nonzero, so enumerate those directly: replace alpha's l-th index i_l by an
  // index j outside alpha; j lands at position m of the sorted beta.
  auto alpha = first_tuple(k);
  std::vector<std::size_t> beta(k);
  for (std::size_t row = 0; row < r; ++row, next_lex(alpha, n)) {
    double diag = 0.0;
    for (std::size_t l = 0; l < k; ++l) diag += a(alpha[l] - 1, alpha[l] - 1);
    out.matrix(row, row) = diag;

    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (std::binary_search(alpha.begin(), alpha.end(), j)) continue;
        beta = alpha;
        beta[l] = j;
        std::sort(beta.begin(), beta.end());
        const auto m = static_cast<std::size_t>(std::find(beta.begin(), beta.end(), j) - beta.begin());
        // (l+1) + (m+1) has the parity of l + m.
        const double sign = ((l + m) % 2 == 0) ? 1.0 : -1.0;
        const std::size_t col = rank(IndexSet(beta, n));
        out.matrix(row, col) = sign * a(alpha[l] - 1, j - 1);
      }
    }
  }
  return out;
}

CompoundMatrix add_compound_oracle(const DenseMatrix& a, std::size_t k, double node_spacing) {
  require_square(a, "add_compound_oracle");
  const std::size_t n = a.rows();
  check_k_range(k, n);
  const double h = node_spacing > 0.0 ? node_spacing : 1.0 / static_cast<double>(k + 1);

  std::vector<double> nodes(k + 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<double>(i + 1) * h;
  const auto weights = lagrange_linear_weights(nodes);

  const std::size_t r = binomial(n, k);
  CompoundMatrix out{n, n, k, CompoundKind::Additive, DenseMatrix(r, r)};
  const DenseMatrix id = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const DenseMatrix sample = mult_compound(id + nodes[i] * a, k).matrix;
    out.matrix += weights[i] * sample;
  }
  return out;
}

DenseMatrix kron_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.empty() || b.empty()) throw DomainError("kron_product: empty operand");
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return out;
}

DenseMatrix kron_sum(const DenseMatrix& a, const DenseMatrix& b) {
  require_square(a, "kron_sum");
  require_square(b, "kron_sum");
  return kron_product(a, DenseMatrix::identity(b.rows())) + kron_product(DenseMatrix::identity(a.rows()), b);
}

AlphaSplit split_alpha(double alpha, std::size_t n) {
  if (!std::isfinite(alpha) || alpha < 1.0 || alpha > static_cast<double>(n)) {
    throw DomainError("alpha=" + std::to_string(alpha) + " outside [1, " + std::to_string(n) + "]");
  }
  const double k = std::floor(alpha);
  return {static_cast<std::size_t>(k), alpha - k};
}

DenseMatrix alpha_add_compound(const DenseMatrix& a, double alpha) {
  require_square(a, "alpha_add_compound");
  const auto [k, s] = split_alpha(alpha, a.rows());
  if (s == 0.0) return add_compound(a, k).matrix;
  return kron_sum((1.0 - s) * add_compound(a, k).matrix, s * add_compound(a, k + 1).matrix);
}

DenseMatrix alpha_mult_compound(const DenseMatrix& a, double alpha) {
  require_square(a, "alpha_mult_compound");
  const auto [k, s] = split_alpha(alpha, a.rows());
  if (numerically_singular(a)) throw DomainError("alpha_mult_compound: matrix is singular");
  if (s == 0.0) return mult_compound(a, k).matrix;
  const DenseMatrix lower = real_matrix_power(mult_compound(a, k).matrix, 1.0 - s);
  const DenseMatrix upper = real_matrix_power(mult_compound(a, k + 1).matrix, s);
  return kron_product(lower, upper);
}

}  // namespace kcompound
