#pragma once

#include <cstddef>

#include "kcompound/dynamics.hpp"

namespace kcompound {

/// Thomas' cyclically symmetric system
///   x1' = sin x2 - b x1 + c x1
///   x2' = sin x3 - b x2 + c x2
///   x3' = sin x1 - b x3
/// c = 0 is the open loop; c != 0 adds the partial-state feedback
/// c diag(1,1,0) x. The state space is D = { x : b |x|_inf <= 1 }.
SystemDef thomas_system(double b, double c = 0.0);

StateBox thomas_state_space(double b);

/// Upper bound 1 - 2b - s(b+1) on mu_1 of the open-loop (2+s)-additive
/// compound of the Jacobian over D.
double thomas_alpha_measure_bound(double b, double s);

/// Smallest s making the open loop (2+s)-contracting in mu_1: (1-2b)/(1+b).
double thomas_contraction_threshold(double b);

/// Supremum gain c* = (s(b+1) + 2b - 1) / (1 + s): every c < c* makes the
/// closed loop (2+s)-contracting in mu_1 on D.
double thomas_gain_bound(double b, double s);

/// LTV with A(t) = [[-1, 0], [-2 cos t, 0]] (2-contracting, trace -1).
SystemDef example5_system();

/// Closed-form transition matrix of example5_system() from time 0.
DenseMatrix example5_transition(double t);

/// [[-1, 1, -2], [0, 1, 0.1], [-3, 0, 1]]: not Metzler, 2-additive compound Metzler.
DenseMatrix example8_matrix();

/// 4x4 test matrix with a_ij = 10 i + j (1-based).
DenseMatrix example1_matrix();

/// Cyclic feedback system on R^n (n >= 3)
///   x1' = -x1 + delta1 tanh(xn)
///   xi' = -xi + tanh(x_{i-1}) + tanh(x_{i+1})
///   xn' = -xn + tanh(x_{n-1})
/// with Jacobian sign pattern: positive sub/super-diagonal, sign(delta1) at
/// (1, n). State space [-3, 3]^n.
SystemDef cyclic_feedback_system(std::size_t n, int delta1);

}  // namespace kcompound
