#include "kcompound/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "kcompound/combinat.hpp"
#include "kcompound/compound.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"

namespace kcompound {

namespace {

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

// y = x + h * k
void axpy_into(Vector& y, const Vector& x, double h, const Vector& k) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + h * k[i];
}

// Fixed-step RK4 over step_times(span, step). `rhs(t, x)` returns x'.
template <class Rhs, class Observe>
void rk4_run(Rhs&& rhs, Vector x, TimeSpan span, double step, Observe&& observe) {
  const std::vector<double> times = step_times(span, step);
  if (!all_finite(x)) throw IntegrationBlowup("integrate: non-finite initial state", span.start);
  observe(times.front(), x);

  Vector tmp(x.size());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double t = times[i];
    const double h = times[i + 1] - t;
    const Vector k1 = rhs(t, x);
    axpy_into(tmp, x, 0.5 * h, k1);
    const Vector k2 = rhs(t + 0.5 * h, tmp);
    axpy_into(tmp, x, 0.5 * h, k2);
    const Vector k3 = rhs(t + 0.5 * h, tmp);
    axpy_into(tmp, x, h, k3);
    const Vector k4 = rhs(t + h, tmp);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!all_finite(x)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate: non-finite state after t=" << t;
      throw IntegrationBlowup(msg.str(), t);
    }
    observe(times[i + 1], x);
  }
}

// Row-major product A * M where M is stored flat with `cols` columns.
Vector mat_mul_flat(const DenseMatrix& a, std::span<const double> m, std::size_t cols) {
  const std::size_t n = a.rows();
  Vector out(n * cols, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += ail * m[l * cols + j];
    }
  return out;
}

void require_ltv(const SystemDef& sys, const char* op) {
  if (sys.kind != SystemDef::Kind::LTV) throw DomainError(std::string(op) + ": requires an LTV system");
}

}  // namespace

bool StateBox::contains(std::span<const double> x, double slack) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] - slack || x[i] > upper[i] + slack) return false;
  return true;
}

SystemDef SystemDef::ltv(std::string name, std::size_t n, MatrixFn a) {
  if (n == 0) throw DomainError("SystemDef: dimension must be positive");
  SystemDef s;
  s.kind = Kind::LTV;
  s.dimension = n;
  s.name = std::move(name);
  s.matrix = std::move(a);
  return s;
}

SystemDef SystemDef::nonlinear(std::string name, std::size_t n, FieldFn f, JacobianFn j,
                               std::optional<StateBox> state_space) {
  if (n == 0) throw DomainError("SystemDef: dimension must be positive");
  if (state_space && (state_space->lower.size() != n || state_space->upper.size() != n)) {
    throw DomainError("SystemDef: state space dimension does not match the system");
  }
  SystemDef s;
  s.kind = Kind::Nonlinear;
  s.dimension = n;
  s.name = std::move(name);
  s.field = std::move(f);
  s.jacobian = std::move(j);
  s.state_space = std::move(state_space);
  return s;
}

Vector SystemDef::rhs(double t, std::span<const double> x) const {
  if (x.size() != dimension) throw DomainError("rhs: state dimension mismatch");
  if (kind == Kind::LTV) return system_matrix(t) * x;
  Vector dx = field(t, x);
  if (dx.size() != dimension) throw DomainError("rhs: vector field returned the wrong dimension");
  return dx;
}

DenseMatrix SystemDef::jacobian_at(double t, std::span<const double> x) const {
  if (kind == Kind::LTV) return system_matrix(t);
  DenseMatrix j = jacobian(t, x);
  if (j.rows() != dimension || j.cols() != dimension) throw DomainError("jacobian: wrong shape");
  return j;
}

DenseMatrix SystemDef::system_matrix(double t) const {
  require_ltv(*this, "system_matrix");
  DenseMatrix a = matrix(t);
  if (a.rows() != dimension || a.cols() != dimension) throw DomainError("system_matrix: wrong shape");
  return a;
}

std::vector<double> step_times(TimeSpan span, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("step must be positive and finite");
  if (!std::isfinite(span.start) || !std::isfinite(span.end) || span.end < span.start) {
    throw DomainError("time span must be finite with end >= start");
  }
  std::vector<double> times;
  const double guard = 1e-9 * step;
  for (std::size_t i = 0;; ++i) {
    const double t = span.start + static_cast<double>(i) * step;
    if (t >= span.end - guard) break;
    times.push_back(t);
  }
  times.push_back(span.end);
  return times;
}

void integrate_each(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step,
                    const std::function<void(double, std::span<const double>)>& observe) {
  if (x0.size() != sys.dimension) throw DomainError("integrate: initial state has the wrong dimension");
  rk4_run([&](double t, const Vector& x) { return sys.rhs(t, x); }, Vector(x0.begin(), x0.end()), span, step,
          [&](double t, const Vector& x) { observe(t, x); });
}

Trajectory integrate(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step) {
  Trajectory traj;
  traj.meta.step = step;
  integrate_each(sys, x0, span, step, [&](double t, std::span<const double> x) {
    traj.times.push_back(t);
    traj.states.emplace_back(x.begin(), x.end());
  });
  return traj;
}

Vector integrate_final(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step) {
  Vector last;
  integrate_each(sys, x0, span, step, [&](double, std::span<const double> x) { last.assign(x.begin(), x.end()); });
  return last;
}

MatrixTrajectory transition_matrix(const SystemDef& sys, TimeSpan span, double step) {
  require_ltv(sys, "transition_matrix");
  const std::size_t n = sys.dimension;
  const DenseMatrix id = DenseMatrix::identity(n);
  MatrixTrajectory traj;
  traj.meta.step = step;
  rk4_run([&](double t, const Vector& phi) { return mat_mul_flat(sys.system_matrix(t), phi, n); },
          Vector(id.data().begin(), id.data().end()), span, step, [&](double t, const Vector& phi) {
            traj.times.push_back(t);
            traj.states.emplace_back(n, n, phi);
          });
  return traj;
}

double compound_transition_residual(const SystemDef& sys, std::size_t k, TimeSpan span, double step) {
  require_ltv(sys, "compound_transition_residual");
  const std::size_t n = sys.dimension;
  check_k_range(k, n);
  const std::size_t r = binomial(n, k);

  // Joint state: Phi (n*n) followed by Psi (r*r), both row-major.
  Vector state(n * n + r * r, 0.0);
  for (std::size_t i = 0; i < n; ++i) state[i * n + i] = 1.0;
  for (std::size_t i = 0; i < r; ++i) state[n * n + i * r + i] = 1.0;

  auto rhs = [&](double t, const Vector& s) {
    const DenseMatrix a = sys.system_matrix(t);
    const DenseMatrix ak = add_compound(a, k).matrix;
    Vector out = mat_mul_flat(a, std::span<const double>(s).first(n * n), n);
    const Vector psi = mat_mul_flat(ak, std::span<const double>(s).subspan(n * n), r);
    out.insert(out.end(), psi.begin(), psi.end());
    return out;
  };

  double worst = 0.0;
  rk4_run(rhs, std::move(state), span, step, [&](double, const Vector& s) {
    const DenseMatrix phi(n, n, Vector(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n * n)));
    const DenseMatrix psi(r, r, Vector(s.begin() + static_cast<std::ptrdiff_t>(n * n), s.end()));
    worst = std::max(worst, max_abs_diff(psi, mult_compound(phi, k).matrix));
  });
  return worst;
}

double k_volume(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw DomainError("k_volume: no vectors");
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != n || n == 0) throw DomainError("k_volume: vectors must share a positive dimension");
  const std::size_t k = vectors.size();
  if (k > n) return 0.0;

  DenseMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += vectors[i][l] * vectors[j][l];
      gram(i, j) = gram(j, i) = s;
    }
  return std::sqrt(std::max(0.0, determinant(gram)));
}

QuadratureRule gauss_legendre_unit(std::size_t count) {
  if (count == 0) throw DomainError("gauss_legendre_unit: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Newton iteration on P_n from the standard asymptotic initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t m = 2; m <= count; ++m) {
        const double md = static_cast<double>(m);
        const double p2 = ((2.0 * md - 1.0) * x * p1 - (md - 1.0) * p0) / md;
        p0 = p1;
        p1 = p2;
      }
      const double pn = count == 1 ? x : p1;
      const double pnm1 = count == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2), halved for [0,1]
  }
  return rule;
}

DenseMatrix segment_average_jacobian(const SystemDef& sys, double t, std::span<const double> xa,
                                     std::span<const double> xb, std::size_t quad_nodes) {
  if (quad_nodes < 2) throw DomainError("segment_average_jacobian: need at least 2 quadrature nodes");
  if (xa.size() != sys.dimension || xb.size() != sys.dimension) {
    throw DomainError("segment_average_jacobian: state dimension mismatch");
  }
  const QuadratureRule rule = gauss_legendre_unit(quad_nodes);
  DenseMatrix avg(sys.dimension, sys.dimension);
  Vector point(sys.dimension);
  for (std::size_t q = 0; q < quad_nodes; ++q) {
    const double s = rule.nodes[q];
    for (std::size_t i = 0; i < sys.dimension; ++i) point[i] = s * xa[i] + (1.0 - s) * xb[i];
    avg += rule.weights[q] * sys.jacobian_at(t, point);
  }
  return avg;
}

DenseMatrix variational_matrix(const SystemDef& sys, std::span<const double> a, std::span<const double> b, double t,
                               std::size_t quad_nodes, double step) {
  if (t < 0.0) throw DomainError("variational_matrix: t must be non-negative");
  const Vector xa = integrate_final(sys, a, {0.0, t}, step);
  const Vector xb = integrate_final(sys, b, {0.0, t}, step);
  return segment_average_jacobian(sys, t, xa, xb, quad_nodes);
}

std::vector<SignTracePoint> sign_variation_trace(const SystemDef& sys, std::span<const double> x0, TimeSpan span,
                                                 double step, double zero_rel_tol) {
  std::vector<SignTracePoint> out;
  integrate_each(sys, x0, span, step, [&](double t, std::span<const double> x) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    const double tol = zero_rel_tol * scale;
    out.push_back({t, s_minus(x, tol), s_plus(x, tol)});
  });
  return out;
}

std::vector<Vector> uniform_grid(const StateBox& box, std::size_t points_per_axis) {
  const std::size_t n = box.dimension();
  if (n == 0 || box.upper.size() != n) throw DomainError("uniform_grid: malformed box");
  if (points_per_axis == 0) throw DomainError("uniform_grid: need at least one point per axis");
  auto coord = [&](std::size_t axis, std::size_t i) {
    if (points_per_axis == 1) return 0.5 * (box.lower[axis] + box.upper[axis]);
    const double f = static_cast<double>(i) / static_cast<double>(points_per_axis - 1);
    return box.lower[axis] + f * (box.upper[axis] - box.lower[axis]);
  };
  std::size_t total = 1;
  for (std::size_t d = 0; d < n; ++d) total *= points_per_axis;
  std::vector<Vector> grid;
  grid.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t c = 0; c < total; ++c) {
    Vector p(n);
    for (std::size_t d = 0; d < n; ++d) p[d] = coord(d, idx[d]);
    grid.push_back(std::move(p));
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < points_per_axis) break;
      idx[d] = 0;
    }
  }
  return grid;
}

std::vector<double> uniform_times(TimeSpan span, std::size_t count) {
  if (count == 0) throw DomainError("uniform_times: count must be positive");
  if (span.end < span.start) throw DomainError("uniform_times: end < start");
  if (count == 1) return {span.start};
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = span.start + (span.end - span.start) * static_cast<double>(i) / static_cast<double>(count - 1);
  return t;
}

}  // namespace kcompound
