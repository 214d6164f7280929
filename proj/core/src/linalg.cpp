#include "kcompound/linalg.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kcompound/errors.hpp"

namespace kcompound {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix a(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

void require_square(const DenseMatrix& a, const char* op) {
  if (a.empty() || !a.is_square()) throw DomainError(std::string(op) + ": matrix must be square");
}

// In-place LU with partial pivoting. Returns the permutation sign, or 0 when
// a zero pivot is met.
int lu_decompose(std::vector<double>& m, std::size_t n, std::vector<std::size_t>& perm) {
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    double best = std::abs(m[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = std::abs(m[r * n + c]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best == 0.0) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[p * n + j]);
      std::swap(perm[c], perm[p]);
      sign = -sign;
    }
    const double pivot = m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / pivot;
      m[r * n + c] = f;
      if (f == 0.0) continue;
      for (std::size_t j = c + 1; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return sign;
}

}  // namespace

double determinant(const DenseMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  std::vector<double> m(a.data().begin(), a.data().end());
  std::vector<std::size_t> perm;
  const int sign = lu_decompose(m, n, perm);
  if (sign == 0) return 0.0;
  double det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= m[i * n + i];
  return det;
}

DenseMatrix inverse(const DenseMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  std::vector<double> m(a.data().begin(), a.data().end());
  std::vector<std::size_t> perm;
  if (lu_decompose(m, n, perm) == 0) throw DomainError("inverse: matrix is singular");
  DenseMatrix inv(n, n);
  Vector y(n);
  for (std::size_t col = 0; col < n; ++col) {
    // Solve L y = P e_col, then U x = y.
    for (std::size_t i = 0; i < n; ++i) {
      double s = perm[i] == col ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) s -= m[i * n + j] * y[j];
      y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= m[ii * n + j] * inv(j, col);
      inv(ii, col) = s / m[ii * n + ii];
    }
  }
  return inv;
}

std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a) {
  require_square(a, "eigenvalues");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw DomainError("eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& s) {
  require_square(s, "symmetric_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(s), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("symmetric_eigenvalues: solver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + s.rows());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> singular_values(const DenseMatrix& a) {
  if (a.empty()) throw DomainError("singular_values: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

DenseMatrix real_matrix_power(const DenseMatrix& a, double p) {
  require_square(a, "real_matrix_power");
  const Eigen::MatrixXd m = to_eigen(a);
  const double scale = std::max(1.0, a.max_abs());

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw DomainError("real_matrix_power: eigensolver did not converge");
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const std::complex<double> l = lambda(i);
    if (std::abs(l) <= 1e-14 * scale) throw DomainError("real_matrix_power: matrix is singular");
    if (l.real() < 0.0 && std::abs(l.imag()) <= 1e-12 * std::abs(l)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "real_matrix_power: eigenvalue " << l.real() << (l.imag() < 0 ? "" : "+") << l.imag()
          << "i lies on the closed negative real axis; no real principal power exists";
      throw UnsupportedDomainError(msg.str());
    }
  }

  if ((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(m);
    const Eigen::VectorXd powered = sym.eigenvalues().array().pow(p);
    return from_eigen(sym.eigenvectors() * powered.asDiagonal() * sym.eigenvectors().transpose());
  }

  // Well-conditioned eigenbasis: V diag(lambda^p) V^{-1}. Otherwise fall back to
  // the Schur-based algorithm, which does not need a diagonalization.
  const Eigen::MatrixXcd v = solver.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (std::isfinite(cond) && cond < 1e8) {
    Eigen::VectorXcd powered(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) powered(i) = std::pow(lambda(i), p);
    const Eigen::MatrixXcd r = v * powered.asDiagonal() * v.inverse();
    return from_eigen(r.real());
  }
  Eigen::MatrixPower<Eigen::MatrixXd> mp(m);
  return from_eigen(mp(p));
}

}  // namespace kcompound
