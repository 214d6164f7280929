#include <cmath>
#include <numbers>

#include "kcompound/classify.hpp"
#include "kcompound/cli/commands.hpp"
#include "kcompound/cli/expression.hpp"
#include "kcompound/combinat.hpp"
#include "kcompound/compound.hpp"
#include "kcompound/measures.hpp"
#include "kcompound/signvar.hpp"
#include "kcompound/systems.hpp"

namespace kcompound::cli {

namespace {

class Checklist {
 public:
  void add(const std::string& name, bool passed, const std::string& detail) {
    checks_.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) ++failures_;
  }

  void near(const std::string& name, double got, double want, double tol) {
    add(name, std::abs(got - want) <= tol, "got " + format_double(got) + ", expected " + format_double(want));
  }

  nlohmann::json checks() const { return checks_; }
  std::size_t failures() const { return failures_; }

 private:
  nlohmann::json checks_ = nlohmann::json::array();
  std::size_t failures_ = 0;
};

}  // namespace

CommandOutput run_selftest() {
  Checklist c;

  const DenseMatrix a8 = example8_matrix();
  const DenseMatrix a8_2 = add_compound(a8, 2).matrix;
  const DenseMatrix want8{{0.0, 0.1, 2.0}, {0.0, 0.0, 1.0}, {3.0, 0.0, 2.0}};
  c.add("example8 additive compound", a8_2 == want8, serialize_matrix_literal(a8_2));
  c.add("example8 A is not Metzler", !is_metzler(a8).metzler, "a13 = -2");
  c.add("example8 A^[2] Metzler and irreducible", is_metzler(a8_2).metzler && is_irreducible(a8_2), "");
  const CertReport cert8 = certify_k_positive({MatrixSample{a8, 0.0, {}}}, 2, false);
  c.add("example8 2-positive Certified", cert8.verdict == Verdict::Certified, std::string(to_string(cert8.verdict)));

  const DenseMatrix a1 = example1_matrix();
  const DenseMatrix a1_3 = add_compound(a1, 3).matrix;
  const auto r = rank(IndexSet({1, 2, 4}, 4));
  const auto col = rank(IndexSet({2, 3, 4}, 4));
  c.near("example1 A^[3] entry ({1,2,4},{2,3,4}) = -a13", a1_3(r, col), -a1(0, 2), 0.0);

  const Vector x{-1.0, 0.0, 0.0, 2.0, -3.0};
  c.add("s_minus([-1,0,0,2,-3]) = 2", s_minus(x) == 2, std::to_string(s_minus(x)));
  c.add("s_plus([-1,0,0,2,-3]) = 4", s_plus(x) == 4, std::to_string(s_plus(x)));

  const SystemDef ex5 = example5_system();
  double worst5 = 0.0;
  for (double t : uniform_times({0.0, 2.0 * std::numbers::pi}, 64))
    worst5 = std::max(worst5, std::abs(add_compound(ex5.system_matrix(t), 2).matrix(0, 0) + 1.0));
  c.near("example5 A^[2](t) = -1", worst5, 0.0, 1e-15);
  const MatrixTrajectory phi = transition_matrix(ex5, {0.0, 1.0}, 1e-3);
  c.near("example5 transition matrix at t=1", max_abs_diff(phi.states.back(), example5_transition(1.0)), 0.0, 1e-5);
  c.near("example5 unit-square area at t=1", k_volume({phi.states.back().column(0), phi.states.back().column(1)}),
         std::exp(-1.0), 1e-4 * std::exp(-1.0));

  const double b = 0.1;
  const SystemDef th = thomas_system(b);
  const Vector zero(3, 0.0);
  const DenseMatrix j0 = th.jacobian_at(0.0, zero);
  c.near("thomas J^[3] = trace = -3b", add_compound(j0, 3).matrix(0, 0), -3.0 * b, 1e-15);
  c.near("thomas mu1(J^[2.7]) at x=0", measure(alpha_add_compound(j0, 2.7), MeasureKind::L1),
         thomas_alpha_measure_bound(b, 0.7), 1e-10);
  c.near("thomas threshold s*", thomas_contraction_threshold(b), 0.8 / 1.1, 1e-15);
  c.near("thomas gain bound at s=0", thomas_gain_bound(b, 0.0), 2.0 * b - 1.0, 1e-15);

  const SystemDef ex8 = SystemDef::ltv("example8", 3, [a8](double) { return a8; });
  std::size_t worst_trace = 0;
  for (const auto& pt : sign_variation_trace(ex8, Vector{4.0, -21.0, -1.0}, {0.0, 1.0}, 1e-3))
    worst_trace = std::max(worst_trace, pt.s_minus);
  c.add("example8 trace s_minus <= 1 on [0,1]", worst_trace <= 1, "max " + std::to_string(worst_trace));

  CommandOutput out;
  out.report["checks"] = c.checks();
  out.report["failures"] = c.failures();
  out.report["verdict"] = c.failures() == 0 ? "pass" : "fail";
  out.exit_code = c.failures() == 0 ? 0 : 1;
  return out;
}

}  // namespace kcompound::cli
