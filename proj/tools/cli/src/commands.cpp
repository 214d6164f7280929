#include "kcompound/cli/commands.hpp"

#include <cmath>
#include <numbers>

#include "kcompound/classify.hpp"
#include "kcompound/combinat.hpp"
#include "kcompound/compound.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/measures.hpp"
#include "kcompound/signvar.hpp"
#include "kcompound/cli/json_output.hpp"

namespace kcompound::cli {

using nlohmann::json;

namespace {

constexpr double kDefaultStep = 1e-3;
constexpr std::size_t kDefaultTimeSamples = 201;

MeasureKind norm_of(const Params& p) {
  const std::string text = p.norm.value_or("l1");
  const auto kind = parse_measure_kind(text);
  if (!kind) throw ProblemError("norm: unknown '" + text + "' (l1, l2, linf)");
  return *kind;
}

double order_of(const Params& p) {
  if (p.alpha) return *p.alpha;
  if (p.k) return static_cast<double>(*p.k);
  throw ProblemError("k: required (or alpha)");
}

bool is_integral(double v) { return v == std::floor(v); }

DenseMatrix matrix_at(const ResolvedSystem& rs, const Params& p) {
  const SystemDef& sys = rs.system;
  const double t = p.t.value_or(0.0);
  if (sys.kind == SystemDef::Kind::LTV) return sys.system_matrix(t);
  const Vector x = p.x.value_or(Vector(sys.dimension, 0.0));
  if (x.size() != sys.dimension)
    throw ProblemError("x: expected " + std::to_string(sys.dimension) + " components, got " + std::to_string(x.size()));
  return sys.jacobian_at(t, x);
}

Vector initial_state(const ResolvedSystem& rs, const Params& p) {
  if (!p.x0) throw ProblemError("x0: required");
  if (p.x0->size() != rs.system.dimension)
    throw ProblemError("x0: expected " + std::to_string(rs.system.dimension) + " components, got " +
                       std::to_string(p.x0->size()));
  return *p.x0;
}

double step_of(const Params& p) {
  const double h = p.step.value_or(kDefaultStep);
  if (!(h > 0.0) || !std::isfinite(h)) throw ProblemError("step: must be positive");
  return h;
}

json index_sets_json(std::size_t k, std::size_t n) {
  json out = json::array();
  for (const auto& s : lex_sequences(k, n)) out.push_back(std::vector<std::size_t>(s.elements().begin(), s.elements().end()));
  return out;
}

json witness_json(const Witness& w) {
  json j = json::object();
  j["sample_index"] = w.sample_index;
  j["t"] = w.t;
  if (!w.x.empty()) j["x"] = w.x;
  if (w.row && w.col) j["entry"] = {*w.row + 1, *w.col + 1};
  j["value"] = w.value;
  j["detail"] = w.detail;
  return j;
}

json cert_json(const CertReport& r) {
  json j = json::object();
  j["property"] = std::string(to_string(r.property));
  j["verdict"] = std::string(to_string(r.verdict));
  j["k_or_alpha"] = r.k_or_alpha;
  if (r.measure_kind) j["measure_kind"] = std::string(to_string(*r.measure_kind));
  j["margin"] = r.margin;
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  j["grid"] = {{"kind", r.grid.kind}, {"count", r.grid.count}, {"description", r.grid.description}};
  j["rationale"] = r.rationale;
  if (r.property == Property::StronglyKPositive || r.property == Property::StronglyKCooperative)
    j["irreducible_samples"] = r.irreducible_samples;
  return j;
}

int exit_for(Verdict v) { return v == Verdict::Certified ? 0 : 2; }

struct PropertySpec {
  Property property;
  bool strong = false;
};

PropertySpec parse_property(const std::string& text) {
  if (text == "k-contracting") return {Property::KContracting};
  if (text == "alpha-contracting") return {Property::AlphaContracting};
  if (text == "k-positive") return {Property::KPositive};
  if (text == "strongly-k-positive") return {Property::StronglyKPositive, true};
  if (text == "k-cooperative") return {Property::KCooperative};
  if (text == "strongly-k-cooperative") return {Property::StronglyKCooperative, true};
  if (text == "k-diag-stable") return {Property::KDiagStable};
  throw ProblemError("property: unknown '" + text +
                     "' (k-contracting, alpha-contracting, k-positive, strongly-k-positive, k-cooperative, "
                     "strongly-k-cooperative, k-diag-stable)");
}

std::size_t require_k(const Params& p) {
  if (!p.k) throw ProblemError("k: required");
  return *p.k;
}

std::vector<Vector> state_grid(const ResolvedSystem& rs, const Params& p) {
  if (!rs.system.state_space) throw ProblemError("system: no state space to sample");
  const std::size_t ppa = p.grid_points.value_or(rs.system.dimension <= 3 ? 21 : 11);
  if (ppa < 1) throw ProblemError("grid_points: must be positive");
  return uniform_grid(*rs.system.state_space, ppa);
}

std::vector<MatrixSample> matrix_samples(const ResolvedSystem& rs, const Params& p) {
  const SystemDef& sys = rs.system;
  if (sys.kind == SystemDef::Kind::Nonlinear) {
    const double t = p.t.value_or(0.0);
    return sample_field([&sys, t](std::span<const double> x) { return sys.jacobian_at(t, x); }, state_grid(rs, p));
  }
  if (rs.constant) return {MatrixSample{sys.system_matrix(0.0), 0.0, {}}};
  const TimeSpan span = p.t_span.value_or(TimeSpan{0.0, 2.0 * std::numbers::pi});
  const std::size_t count = p.samples.value_or(kDefaultTimeSamples);
  if (count < 1) throw ProblemError("samples: must be positive");
  const std::vector<double> times = uniform_times(span, count);
  return sample_ltv([&sys](double t) { return sys.system_matrix(t); }, times);
}

std::string csv_number(double v) { return format_double(v); }

}  // namespace

CommandOutput run_compound(const Params& p) {
  const ResolvedSystem rs = resolve_system(p);
  const DenseMatrix a = matrix_at(rs, p);
  const std::string kind = p.kind.value_or("multiplicative");
  if (kind != "multiplicative" && kind != "additive")
    throw ProblemError("kind: must be multiplicative or additive, got '" + kind + "'");
  const double order = order_of(p);

  CommandOutput out;
  DenseMatrix result;
  if (is_integral(order)) {
    const auto k = static_cast<std::size_t>(order);
    result = kind == "additive" ? add_compound(a, k).matrix : mult_compound(a, k).matrix;
    out.report["index_sets"] = index_sets_json(k, a.rows());
    if (kind == "multiplicative") {
      if (a.rows() > 10)
        out.warnings.push_back("sign regularity enumerates C(n,k)^2 minors; n = " + std::to_string(a.rows()) +
                               " may be slow");
      out.report["sign_regularity"] = std::string(to_string(sign_regular_order(a, k, true)));
    }
  } else {
    result = kind == "additive" ? alpha_add_compound(a, order) : alpha_mult_compound(a, order);
  }
  out.report["kind"] = kind;
  out.report["k_or_alpha"] = order;
  out.report["system"] = rs.label;
  out.report["result_matrix"] = matrix_to_json(result);
  return out;
}

CommandOutput run_measure(const Params& p) {
  const ResolvedSystem rs = resolve_system(p);
  const DenseMatrix a = matrix_at(rs, p);
  const MeasureKind kind = norm_of(p);
  const double order = order_of(p);
  const double value = is_integral(order) ? compound_measure(a, static_cast<std::size_t>(order), kind)
                                          : measure(alpha_add_compound(a, order), kind);
  CommandOutput out;
  out.report["measure_kind"] = std::string(to_string(kind));
  out.report["k_or_alpha"] = order;
  out.report["system"] = rs.label;
  out.report["value"] = value;
  return out;
}

CommandOutput run_certify(const Params& p) {
  if (!p.property) throw ProblemError("property: required");
  const PropertySpec spec = parse_property(*p.property);
  const ResolvedSystem rs = resolve_system(p);
  const bool nonlinear = rs.system.kind == SystemDef::Kind::Nonlinear;

  CertOptions opts;
  if (p.reducible_fraction) {
    if (!(*p.reducible_fraction >= 0.0 && *p.reducible_fraction < 1.0))
      throw ProblemError("reducible_fraction: must lie in [0, 1)");
    opts.reducible_fraction = *p.reducible_fraction;
  }

  CertReport rep;
  switch (spec.property) {
    case Property::KContracting:
    case Property::AlphaContracting: {
      double order = 0.0;
      if (spec.property == Property::AlphaContracting) {
        if (p.alpha) {
          order = *p.alpha;
        } else if (p.s) {
          order = 2.0 + *p.s;
        } else {
          throw ProblemError("alpha: required (or s, meaning alpha = 2 + s)");
        }
      } else {
        order = static_cast<double>(require_k(p));
      }
      rep = certify_k_contracting(matrix_samples(rs, p), order, norm_of(p), opts);
      break;
    }
    case Property::KPositive:
    case Property::StronglyKPositive:
      if (nonlinear) throw ProblemError("property: k-positive applies to LTV systems; use k-cooperative");
      rep = certify_k_positive(matrix_samples(rs, p), require_k(p), spec.strong, opts);
      break;
    case Property::KCooperative:
    case Property::StronglyKCooperative: {
      if (!nonlinear) throw ProblemError("property: k-cooperative applies to nonlinear systems; use k-positive");
      const SystemDef& sys = rs.system;
      const double t = p.t.value_or(0.0);
      rep = certify_k_cooperative([&sys, t](std::span<const double> x) { return sys.jacobian_at(t, x); },
                                  state_grid(rs, p), require_k(p), spec.strong, opts);
      break;
    }
    case Property::KDiagStable: {
      const DenseMatrix a = matrix_at(rs, p);
      const std::size_t k = require_k(p);
      check_k_range(k, a.rows());
      const Vector d = p.d.value_or(Vector(binomial(a.rows(), k), 1.0));
      rep = certify_k_diag_stable(a, k, d);
      break;
    }
  }

  CommandOutput out;
  out.report = cert_json(rep);
  out.report["system"] = rs.label;
  out.exit_code = exit_for(rep.verdict);
  return out;
}

CommandOutput run_simulate(const Params& p) {
  const ResolvedSystem rs = resolve_system(p);
  const SystemDef& sys = rs.system;
  const std::string task = p.task.value_or("state");
  const TimeSpan span = p.t_span.value_or(TimeSpan{0.0, 10.0});
  const double h = step_of(p);
  const std::size_t n = sys.dimension;

  CommandOutput out;
  out.report["simulation"] = task;
  out.report["system"] = rs.label;
  out.report["integrator"] = {{"method", "rk4-fixed"}, {"step", h}};
  out.report["t_span"] = {span.start, span.end};
  std::string csv;

  if (task == "state") {
    const Vector x0 = initial_state(rs, p);
    csv = "t";
    for (std::size_t i = 0; i < n; ++i) csv += ",x" + std::to_string(i + 1);
    csv += '\n';
    Vector last;
    std::size_t rows = 0;
    integrate_each(sys, x0, span, h, [&](double t, std::span<const double> x) {
      csv += csv_number(t);
      for (double v : x) csv += "," + csv_number(v);
      csv += '\n';
      last.assign(x.begin(), x.end());
      ++rows;
    });
    out.report["final_state"] = last;
    out.report["rows"] = rows;
  } else if (task == "volume" || task == "transition") {
    if (sys.kind != SystemDef::Kind::LTV) throw ProblemError("task: " + task + " requires an LTV system");
    const MatrixTrajectory phi = transition_matrix(sys, span, h);
    if (task == "volume") {
      const std::size_t k = p.k.value_or(n);
      check_k_range(k, n);
      csv = "t,volume\n";
      double last = 1.0;
      for (std::size_t i = 0; i < phi.times.size(); ++i) {
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < k; ++j) cols.push_back(phi.states[i].column(j));
        last = k_volume(cols);
        csv += csv_number(phi.times[i]) + "," + csv_number(last) + "\n";
      }
      out.report["k"] = k;
      out.report["final_volume"] = last;
    } else {
      csv = "t";
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) csv += ",phi_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      csv += '\n';
      for (std::size_t s = 0; s < phi.times.size(); ++s) {
        csv += csv_number(phi.times[s]);
        for (double v : phi.states[s].data()) csv += "," + csv_number(v);
        csv += '\n';
      }
      out.report["result_matrix"] = matrix_to_json(phi.states.back());
    }
    out.report["rows"] = phi.times.size();
  } else {
    throw ProblemError("task: must be state, volume or transition, got '" + task + "'");
  }
  out.csv = std::move(csv);
  return out;
}

CommandOutput run_trace(const Params& p) {
  const ResolvedSystem rs = resolve_system(p);
  const Vector x0 = initial_state(rs, p);
  const TimeSpan span = p.t_span.value_or(TimeSpan{0.0, 10.0});
  const double h = step_of(p);
  const auto trace = sign_variation_trace(rs.system, x0, span, h);

  std::string csv = "t,s_minus,s_plus\n";
  std::size_t max_minus = 0;
  std::size_t max_plus = 0;
  bool non_increasing = true;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& pt = trace[i];
    csv += csv_number(pt.t) + "," + std::to_string(pt.s_minus) + "," + std::to_string(pt.s_plus) + "\n";
    max_minus = std::max(max_minus, pt.s_minus);
    max_plus = std::max(max_plus, pt.s_plus);
    if (i > 0 && pt.s_minus > trace[i - 1].s_minus) non_increasing = false;
  }
  CommandOutput out;
  out.report["system"] = rs.label;
  out.report["integrator"] = {{"method", "rk4-fixed"}, {"step", h}};
  out.report["t_span"] = {span.start, span.end};
  out.report["s_minus_initial"] = s_minus(x0, default_zero_tolerance(x0));
  out.report["max_s_minus"] = max_minus;
  out.report["max_s_plus"] = max_plus;
  out.report["s_minus_non_increasing"] = non_increasing;
  out.report["rows"] = trace.size();
  out.csv = std::move(csv);
  return out;
}

}  // namespace kcompound::cli
