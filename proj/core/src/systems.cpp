#include "kcompound/systems.hpp"

#include <cmath>
#include <string>

#include "kcompound/errors.hpp"

namespace kcompound {

SystemDef thomas_system(double b, double c) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("thomas_system: b must be positive");
  if (!std::isfinite(c)) throw DomainError("thomas_system: c must be finite");
  auto field = [b, c](double, std::span<const double> x) {
    return Vector{std::sin(x[1]) - b * x[0] + c * x[0], std::sin(x[2]) - b * x[1] + c * x[1],
                  std::sin(x[0]) - b * x[2]};
  };
  auto jacobian = [b, c](double, std::span<const double> x) {
    return DenseMatrix{{-b + c, std::cos(x[1]), 0.0}, {0.0, -b + c, std::cos(x[2])}, {std::cos(x[0]), 0.0, -b}};
  };
  const std::string name = c == 0.0 ? "thomas" : "thomas-closed-loop";
  return SystemDef::nonlinear(name, 3, field, jacobian, thomas_state_space(b));
}

StateBox thomas_state_space(double b) {
  if (!(b > 0.0)) throw DomainError("thomas_state_space: b must be positive");
  const double r = 1.0 / b;
  return {{-r, -r, -r}, {r, r, r}};
}

double thomas_alpha_measure_bound(double b, double s) { return 1.0 - 2.0 * b - s * (b + 1.0); }

double thomas_contraction_threshold(double b) {
  if (!(b > 0.0)) throw DomainError("thomas_contraction_threshold: b must be positive");
  return (1.0 - 2.0 * b) / (1.0 + b);
}

double thomas_gain_bound(double b, double s) {
  if (!(b > 0.0)) throw DomainError("thomas_gain_bound: b must be positive");
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("thomas_gain_bound: s must lie in [0, 1)");
  return (s * (b + 1.0) + 2.0 * b - 1.0) / (1.0 + s);
}

SystemDef example5_system() {
  return SystemDef::ltv("example5", 2, [](double t) { return DenseMatrix{{-1.0, 0.0}, {-2.0 * std::cos(t), 0.0}}; });
}

DenseMatrix example5_transition(double t) {
  const double e = std::exp(-t);
  return DenseMatrix{{e, 0.0}, {-1.0 + e * (std::cos(t) - std::sin(t)), 1.0}};
}

DenseMatrix example8_matrix() { return DenseMatrix{{-1.0, 1.0, -2.0}, {0.0, 1.0, 0.1}, {-3.0, 0.0, 1.0}}; }

DenseMatrix example1_matrix() {
  DenseMatrix a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = 10.0 * static_cast<double>(i + 1) + static_cast<double>(j + 1);
  return a;
}

SystemDef cyclic_feedback_system(std::size_t n, int delta1) {
  if (n < 3) throw DomainError("cyclic_feedback_system: n must be at least 3");
  if (delta1 != 1 && delta1 != -1) throw DomainError("cyclic_feedback_system: delta1 must be +1 or -1");
  const double d = delta1;
  auto field = [n, d](double, std::span<const double> x) {
    Vector dx(n);
    dx[0] = -x[0] + d * std::tanh(x[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) dx[i] = -x[i] + std::tanh(x[i - 1]) + std::tanh(x[i + 1]);
    dx[n - 1] = -x[n - 1] + std::tanh(x[n - 2]);
    return dx;
  };
  auto sech2 = [](double v) {
    const double c = std::cosh(v);
    return 1.0 / (c * c);
  };
  auto jacobian = [n, d, sech2](double, std::span<const double> x) {
    DenseMatrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, i) = -1.0;
    j(0, n - 1) = d * sech2(x[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      j(i, i - 1) = sech2(x[i - 1]);
      j(i, i + 1) = sech2(x[i + 1]);
    }
    j(n - 1, n - 2) = sech2(x[n - 2]);
    return j;
  };
  StateBox box{Vector(n, -3.0), Vector(n, 3.0)};
  return SystemDef::nonlinear("cyclic" + std::to_string(n) + (delta1 > 0 ? "+" : "-"), n, field, jacobian, box);
}

}  // namespace kcompound
