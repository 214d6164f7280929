#include "kcompound/cli/app.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "kcompound/cli/commands.hpp"
#include "kcompound/cli/json_output.hpp"
#include "kcompound/errors.hpp"

namespace kcompound::cli {

namespace {

struct RawOptions {
  std::optional<std::string> problem;
  std::optional<std::string> builtin;
  std::optional<std::string> matrix;
  std::optional<std::string> matrix_file;
  std::optional<std::string> kind;
  std::optional<std::string> norm;
  std::optional<std::string> property;
  std::optional<std::string> task;
  std::optional<std::string> t_span;
  std::optional<std::string> x0;
  std::optional<std::string> x;
  std::optional<std::string> d;
  std::optional<std::string> csv;
  std::optional<std::string> out;
  std::optional<std::size_t> k;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> n;
  std::optional<double> alpha;
  std::optional<double> step;
  std::optional<double> t;
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> s;
  std::optional<double> reducible_fraction;
  std::optional<int> delta;
  bool timing = false;
};

void add_common(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--problem", o.problem, "Problem file (JSON, schema_version 1)");
  cmd->add_option("--builtin", o.builtin, "Builtin system: example1, example5, example8, thomas, cyclic");
  cmd->add_option("--matrix", o.matrix, "Matrix expression, e.g. \"[[-1,0],[-2*cos(t),0]]\"");
  cmd->add_option("--matrix-file", o.matrix_file, "JSON file holding a matrix literal");
  cmd->add_option("--k", o.k, "Compound order k");
  cmd->add_option("--alpha", o.alpha, "Real compound order alpha");
  cmd->add_option("--norm", o.norm, "Vector norm for measures: l1, l2, linf (default l1)");
  cmd->add_option("--t", o.t, "Time at which A(t) or J(t, x) is evaluated (default 0)");
  cmd->add_option("--x", o.x, "State at which a Jacobian is evaluated, comma separated (default 0)");
  cmd->add_option("--t-span", o.t_span, "Time span start:end");
  cmd->add_option("--step", o.step, "Fixed RK4 step (default 1e-3)");
  cmd->add_option("--x0", o.x0, "Initial state, comma separated (use --x0=-1,2 for a leading minus)");
  cmd->add_option("--b", o.b, "Thomas damping b (default 0.1)");
  cmd->add_option("--c", o.c, "Thomas feedback gain c (default 0)");
  cmd->add_option("--s", o.s, "Fractional part s of alpha = 2 + s");
  cmd->add_option("--n", o.n, "Dimension of the cyclic builtin (default 4)");
  cmd->add_option("--delta", o.delta, "Sign delta1 of the cyclic builtin (default -1)");
  cmd->add_option("--out", o.out, "Write the JSON report to this file");
  cmd->add_flag("--timing", o.timing, "Record wall-clock time in timing_ms");
}

Params to_params(const std::string& command, const RawOptions& o) {
  Params p;
  p.command = command;
  p.builtin = o.builtin;
  p.matrix_text = o.matrix;
  p.matrix_file = o.matrix_file;
  p.k = o.k;
  p.alpha = o.alpha;
  p.kind = o.kind;
  p.norm = o.norm;
  p.property = o.property;
  p.task = o.task;
  if (o.t_span) p.t_span = parse_time_span(*o.t_span);
  p.step = o.step;
  p.t = o.t;
  if (o.x0) p.x0 = parse_vector(*o.x0, "x0");
  if (o.x) p.x = parse_vector(*o.x, "x");
  if (o.d) p.d = parse_vector(*o.d, "D");
  p.b = o.b;
  p.c = o.c;
  p.s = o.s;
  p.samples = o.samples;
  p.grid_points = o.grid_points;
  p.n = o.n;
  p.delta = o.delta;
  p.reducible_fraction = o.reducible_fraction;
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ProblemError(path + ": cannot open for writing");
  f << text;
}

CommandOutput dispatch(const std::string& command, const Params& p) {
  if (command == "compound") return run_compound(p);
  if (command == "measure") return run_measure(p);
  if (command == "certify") return run_certify(p);
  if (command == "simulate") return run_simulate(p);
  return run_trace(p);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compound matrices and k-contraction, k-positivity and k-cooperativity certification", "kcomp"};
  app.require_subcommand(1);
  RawOptions o;

  auto* compound = app.add_subcommand("compound", "Multiplicative, additive or alpha compound of a matrix");
  add_common(compound, o);
  compound->add_option("--kind", o.kind, "multiplicative (default) or additive");

  auto* measure = app.add_subcommand("measure", "Matrix measure of the k- or alpha-additive compound");
  add_common(measure, o);

  auto* certify = app.add_subcommand("certify", "Sample-based certification of a structural property");
  add_common(certify, o);
  certify->add_option("--property", o.property,
                      "k-contracting, alpha-contracting, k-positive, strongly-k-positive, k-cooperative, "
                      "strongly-k-cooperative, k-diag-stable");
  certify->add_option("--samples", o.samples, "Time samples for A(t) (default 201)");
  certify->add_option("--grid-points", o.grid_points, "Grid points per state axis (default 21, or 11 for n > 3)");
  certify->add_option("--D", o.d, "Diagonal of D for k-diag-stable, comma separated (default all ones)");
  certify->add_option("--reducible-fraction", o.reducible_fraction, "Tolerated reducible fraction (default 0.01)");

  auto* simulate = app.add_subcommand("simulate", "RK4 simulation; CSV of states, k-volumes or transition matrices");
  add_common(simulate, o);
  simulate->add_option("--task", o.task, "state (default), volume or transition");
  simulate->add_option("--csv", o.csv, "Write the CSV here instead of stdout");

  auto* trace = app.add_subcommand("trace", "Sign-variation counts s-(x(t)) and s+(x(t)) along a solution");
  add_common(trace, o);
  trace->add_option("--csv", o.csv, "Write the CSV here instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Check the built-in worked examples");
  selftest->add_option("--out", o.out, "Write the JSON report to this file");

  std::vector<const char*> argv{"kcomp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto started = std::chrono::steady_clock::now();
  try {
    CommandOutput result;
    Params params;
    params.command = command;
    if (command == "selftest") {
      result = run_selftest();
    } else {
      if (o.problem) load_problem_file(*o.problem, params);
      merge_overrides(params, to_params(command, o));
      read_matrix_file(params);
      result = dispatch(command, params);
    }

    for (const auto& w : result.warnings) err << "kcomp: warning: " << w << "\n";
    nlohmann::json report = std::move(result.report);
    const nlohmann::json inputs = params.to_json();
    report["task"] = command;
    report["inputs"] = inputs;
    report["input_digest"] = fnv1a_hex(canonical_dump(inputs));
    if (o.timing) {
      report["timing_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    } else {
      report["timing_ms"] = nullptr;
    }
    const std::string text = canonical_dump(report);

    if (result.csv && !o.csv) {
      out << *result.csv;
      if (o.out) write_file(*o.out, text);
    } else {
      if (result.csv) write_file(*o.csv, *result.csv);
      if (o.out) {
        write_file(*o.out, text);
      } else {
        out << text;
      }
    }
    return result.exit_code;
  } catch (const IntegrationBlowup& e) {
    err << "kcomp: error: " << e.what() << " (last good time " << format_double(e.last_good_time()) << ")\n";
  } catch (const std::exception& e) {
    err << "kcomp: error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace kcompound::cli
