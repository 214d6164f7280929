#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcompound/dense_matrix.hpp"
#include "kcompound/signvar.hpp"

namespace kcompound {

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

/// Axis-aligned box, used as a state space and for sampling grids.
struct StateBox {
  Vector lower;
  Vector upper;

  std::size_t dimension() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x, double slack = 0.0) const;
};

/// Either an LTV  x' = A(t) x  or a nonlinear system  x' = f(t, x)  with an
/// analytic Jacobian. LTV systems answer rhs()/jacobian_at() through A(t).
struct SystemDef {
  enum class Kind { LTV, Nonlinear };

  using MatrixFn = std::function<DenseMatrix(double)>;
  using FieldFn = std::function<Vector(double, std::span<const double>)>;
  using JacobianFn = std::function<DenseMatrix(double, std::span<const double>)>;

  Kind kind = Kind::LTV;
  std::size_t dimension = 0;
  std::string name;
  MatrixFn matrix;
  FieldFn field;
  JacobianFn jacobian;
  std::optional<StateBox> state_space;

  static SystemDef ltv(std::string name, std::size_t n, MatrixFn a);
  static SystemDef nonlinear(std::string name, std::size_t n, FieldFn f, JacobianFn j,
                             std::optional<StateBox> state_space = std::nullopt);

  Vector rhs(double t, std::span<const double> x) const;
  DenseMatrix jacobian_at(double t, std::span<const double> x) const;
  /// A(t); throws DomainError for nonlinear systems.
  DenseMatrix system_matrix(double t) const;
};

struct IntegratorMeta {
  std::string method = "rk4-fixed";
  double step = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  IntegratorMeta meta;
};

struct MatrixTrajectory {
  std::vector<double> times;
  std::vector<DenseMatrix> states;
  IntegratorMeta meta;
};

/// Output times t0 + i*step inside the span, plus the endpoint.
std::vector<double> step_times(TimeSpan span, double step);

/// Classical fixed-step RK4. Calls `observe(t, x)` at every output time,
/// including the initial point. Throws IntegrationBlowup on a non-finite state.
void integrate_each(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step,
                    const std::function<void(double, std::span<const double>)>& observe);

Trajectory integrate(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step);

/// State at the end of the span only.
Vector integrate_final(const SystemDef& sys, std::span<const double> x0, TimeSpan span, double step);

/// Phi(t) for Phi' = A(t) Phi, Phi(start) = I.
MatrixTrajectory transition_matrix(const SystemDef& sys, TimeSpan span, double step);

/// Integrates Psi' = A^[k](t) Psi, Psi(start) = I, alongside Phi and returns
/// max over the output times of |Psi - Phi^(k)|_max. The two agree exactly in
/// exact arithmetic, so the value measures integrator error.
double compound_transition_residual(const SystemDef& sys, std::size_t k, TimeSpan span, double step);

/// sqrt(det(G^T G)) for G = [v_1 ... v_k]; zero for dependent vectors.
double k_volume(const std::vector<Vector>& vectors);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes mapped to [0, 1].
QuadratureRule gauss_legendre_unit(std::size_t count);

/// integral_0^1 J(t, s xa + (1 - s) xb) ds by Gauss-Legendre quadrature.
DenseMatrix segment_average_jacobian(const SystemDef& sys, double t, std::span<const double> xa,
                                     std::span<const double> xb, std::size_t quad_nodes = 8);

/// The matrix of the variational equation z' = A^{ab}(t) z with
/// z = x(t, a) - x(t, b); trajectories start at time 0.
DenseMatrix variational_matrix(const SystemDef& sys, std::span<const double> a, std::span<const double> b,
                               double t, std::size_t quad_nodes = 8, double step = 1e-3);

struct SignTracePoint {
  double t = 0.0;
  std::size_t s_minus = 0;
  std::size_t s_plus = 0;
};

/// s^- and s^+ of x(t) at every output time. Entries within
/// zero_rel_tol * |x(t)|_inf of zero count as zero (s^-) or free (s^+).
std::vector<SignTracePoint> sign_variation_trace(const SystemDef& sys, std::span<const double> x0, TimeSpan span,
                                                 double step, double zero_rel_tol = 1e-9);

/// points_per_axis^n grid points covering the box, endpoints included.
std::vector<Vector> uniform_grid(const StateBox& box, std::size_t points_per_axis);

/// `count` equally spaced times covering the span, endpoints included.
std::vector<double> uniform_times(TimeSpan span, std::size_t count);

}  // namespace kcompound
