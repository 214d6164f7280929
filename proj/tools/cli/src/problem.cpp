#include "kcompound/cli/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "kcompound/errors.hpp"
#include "kcompound/systems.hpp"

namespace kcompound::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTasks = {"compound", "measure", "certify", "simulate", "trace"};
const std::set<std::string> kBuiltins = {"example1", "example5", "example8", "thomas", "cyclic"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ProblemError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ProblemError(field + ": expected a number");
  return v.get<double>();
}

std::size_t get_count(const json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ProblemError(field + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ProblemError(field + ": expected a string");
  return v.get<std::string>();
}

Vector get_vector(const json& v, const std::string& field) {
  if (v.is_string()) return parse_vector(v.get<std::string>(), field);
  if (!v.is_array()) throw ProblemError(field + ": expected an array of numbers");
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

TimeSpan get_span(const json& v, const std::string& field) {
  if (v.is_string()) return parse_time_span(v.get<std::string>());
  if (!v.is_array() || v.size() != 2) throw ProblemError(field + ": expected [start, end] or \"start:end\"");
  TimeSpan span{get_number(v[0], field + "[0]"), get_number(v[1], field + "[1]")};
  if (!(span.end > span.start)) throw ProblemError(field + ": end must exceed start");
  return span;
}

void read_system(const json& sys, Params& p) {
  if (sys.is_string()) {
    const std::string s = sys.get<std::string>();
    if (!s.empty() && s.front() == '[') {
      p.matrix_text = s;
    } else {
      p.builtin = s;
    }
    return;
  }
  if (sys.is_array()) {
    p.matrix_literal = sys;
    return;
  }
  if (!sys.is_object()) throw ProblemError("system: expected a builtin name, a matrix literal or an object");
  std::size_t sources = 0;
  for (auto it = sys.begin(); it != sys.end(); ++it) {
    const std::string key = it.key();
    if (key == "builtin") {
      p.builtin = get_string(it.value(), "system.builtin");
      ++sources;
    } else if (key == "matrix") {
      p.matrix_literal = it.value();
      ++sources;
    } else if (key == "expression") {
      p.matrix_text = get_string(it.value(), "system.expression");
      ++sources;
    } else {
      throw ProblemError("system." + key + ": unknown field");
    }
  }
  if (sources != 1) throw ProblemError("system: exactly one of builtin, matrix, expression is required");
}

void read_parameters(const json& params, Params& p) {
  if (!params.is_object()) throw ProblemError("parameters: expected an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    const std::string f = "parameters." + key;
    if (key == "k") {
      p.k = get_count(v, f);
    } else if (key == "alpha") {
      p.alpha = get_number(v, f);
    } else if (key == "kind") {
      p.kind = get_string(v, f);
    } else if (key == "norm") {
      p.norm = get_string(v, f);
    } else if (key == "property") {
      p.property = get_string(v, f);
    } else if (key == "task") {
      p.task = get_string(v, f);
    } else if (key == "t_span") {
      p.t_span = get_span(v, f);
    } else if (key == "step") {
      p.step = get_number(v, f);
    } else if (key == "t") {
      p.t = get_number(v, f);
    } else if (key == "x0") {
      p.x0 = get_vector(v, f);
    } else if (key == "x") {
      p.x = get_vector(v, f);
    } else if (key == "D") {
      p.d = get_vector(v, f);
    } else if (key == "b") {
      p.b = get_number(v, f);
    } else if (key == "c") {
      p.c = get_number(v, f);
    } else if (key == "s") {
      p.s = get_number(v, f);
    } else if (key == "samples") {
      p.samples = get_count(v, f);
    } else if (key == "grid_points") {
      p.grid_points = get_count(v, f);
    } else if (key == "grid") {
      p.samples = get_count(v, f);
      p.grid_points = p.samples;
    } else if (key == "n") {
      p.n = get_count(v, f);
    } else if (key == "delta") {
      if (!v.is_number_integer()) throw ProblemError(f + ": expected +1 or -1");
      p.delta = v.get<int>();
    } else if (key == "reducible_fraction") {
      p.reducible_fraction = get_number(v, f);
    } else {
      throw ProblemError(f + ": unknown parameter");
    }
  }
}

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

json Params::to_json() const {
  json j = json::object();
  j["command"] = command;
  if (builtin) j["builtin"] = *builtin;
  if (matrix_text) j["matrix"] = *matrix_text;
  if (matrix_file) j["matrix_file"] = *matrix_file;
  if (matrix_literal) j["matrix_literal"] = *matrix_literal;
  if (k) j["k"] = *k;
  if (alpha) j["alpha"] = *alpha;
  if (kind) j["kind"] = *kind;
  if (norm) j["norm"] = *norm;
  if (property) j["property"] = *property;
  if (task) j["task"] = *task;
  if (t_span) j["t_span"] = {t_span->start, t_span->end};
  if (step) j["step"] = *step;
  if (t) j["t"] = *t;
  if (x0) j["x0"] = *x0;
  if (x) j["x"] = *x;
  if (d) j["D"] = *d;
  if (b) j["b"] = *b;
  if (c) j["c"] = *c;
  if (s) j["s"] = *s;
  if (samples) j["samples"] = *samples;
  if (grid_points) j["grid_points"] = *grid_points;
  if (n) j["n"] = *n;
  if (delta) j["delta"] = *delta;
  if (reducible_fraction) j["reducible_fraction"] = *reducible_fraction;
  return j;
}

void load_problem_text(const std::string& text, const std::string& origin, Params& p) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object()) throw ProblemError(origin + ": top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "schema_version" && key != "system" && key != "task" && key != "parameters")
      throw ProblemError(origin + ": " + key + ": unknown field");
  }
  if (!doc.contains("schema_version")) throw ProblemError(origin + ": schema_version: missing");
  const json& version = doc["schema_version"];
  if (!version.is_number_integer() || version.get<long long>() != 1)
    throw ProblemError(origin + ": schema_version: must be 1");
  if (!doc.contains("task")) throw ProblemError(origin + ": task: missing");
  const std::string task = doc["task"].is_string() ? doc["task"].get<std::string>() : "";
  if (!kTasks.count(task)) throw ProblemError(origin + ": task: must be one of compound, measure, certify, simulate, trace");
  if (task != p.command)
    throw ProblemError(origin + ": task: file is for '" + task + "' but the subcommand is '" + p.command + "'");
  if (!doc.contains("system")) throw ProblemError(origin + ": system: missing");
  try {
    read_system(doc["system"], p);
    if (doc.contains("parameters")) read_parameters(doc["parameters"], p);
  } catch (const ProblemError& e) {
    throw ProblemError(origin + ": " + e.what());
  }
}

void load_problem_file(const std::string& path, Params& p) { load_problem_text(read_file(path), path, p); }

void merge_overrides(Params& p, const Params& o) {
  if (o.builtin || o.matrix_text || o.matrix_file || o.matrix_literal) {
    p.builtin.reset();
    p.matrix_text.reset();
    p.matrix_file.reset();
    p.matrix_literal.reset();
  }
  take(p.builtin, o.builtin);
  take(p.matrix_text, o.matrix_text);
  take(p.matrix_file, o.matrix_file);
  take(p.matrix_literal, o.matrix_literal);
  take(p.k, o.k);
  take(p.alpha, o.alpha);
  take(p.kind, o.kind);
  take(p.norm, o.norm);
  take(p.property, o.property);
  take(p.task, o.task);
  take(p.t_span, o.t_span);
  take(p.step, o.step);
  take(p.t, o.t);
  take(p.x0, o.x0);
  take(p.x, o.x);
  take(p.d, o.d);
  take(p.b, o.b);
  take(p.c, o.c);
  take(p.s, o.s);
  take(p.samples, o.samples);
  take(p.grid_points, o.grid_points);
  take(p.n, o.n);
  take(p.delta, o.delta);
  take(p.reducible_fraction, o.reducible_fraction);
}

void read_matrix_file(Params& p) {
  if (!p.matrix_file) return;
  const std::string& path = *p.matrix_file;
  json doc = parse_json(read_file(path), path);
  if (doc.is_object()) {
    if (!doc.contains("matrix")) throw ProblemError(path + ": expected a matrix literal or an object with \"matrix\"");
    doc = doc["matrix"];
  }
  if (!doc.is_array() && !doc.is_string()) throw ProblemError(path + ": expected a matrix literal");
  p.matrix_literal = std::move(doc);
}

TimeSpan parse_time_span(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ProblemError("t_span: expected start:end, got '" + text + "'");
  TimeSpan span;
  try {
    span.start = ScalarExpression::parse(text.substr(0, colon)).evaluate(0.0);
    span.end = ScalarExpression::parse(text.substr(colon + 1)).evaluate(0.0);
  } catch (const ParseError& e) {
    throw ProblemError(std::string("t_span: ") + e.what());
  }
  if (!(span.end > span.start)) throw ProblemError("t_span: end must exceed start");
  return span;
}

Vector parse_vector(const std::string& text, const std::string& field) {
  Vector out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(ScalarExpression::parse(item).evaluate(0.0));
    } catch (const ParseError& e) {
      throw ProblemError(field + "[" + std::to_string(out.size()) + "]: " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

MatrixExpression matrix_from_json(const json& literal, const std::string& field) {
  if (literal.is_string()) {
    try {
      return MatrixExpression::parse(literal.get<std::string>());
    } catch (const ParseError& e) {
      throw ProblemError(field + ": " + e.what());
    }
  }
  if (!literal.is_array() || literal.empty()) throw ProblemError(field + ": expected a non-empty array of rows");
  const std::size_t rows = literal.size();
  std::size_t cols = 0;
  std::vector<ScalarExpression> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = literal[i];
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) throw ProblemError(rf + ": expected a non-empty array");
    if (i == 0) cols = row.size();
    if (row.size() != cols)
      throw ProblemError(rf + ": has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      const json& e = row[j];
      const std::string ef = rf + "[" + std::to_string(j) + "]";
      if (e.is_number()) {
        entries.emplace_back(e.get<double>());
      } else if (e.is_string()) {
        try {
          entries.push_back(ScalarExpression::parse(e.get<std::string>()));
        } catch (const ParseError& err) {
          throw ProblemError(ef + ": " + err.what());
        }
      } else {
        throw ProblemError(ef + ": expected a number or an expression string");
      }
    }
  }
  return MatrixExpression(rows, cols, std::move(entries));
}

ResolvedSystem resolve_system(const Params& p) {
  const std::size_t sources = (p.builtin ? 1 : 0) + (p.matrix_text ? 1 : 0) + (p.matrix_literal ? 1 : 0);
  if (sources == 0) throw ProblemError("system: none given (use --builtin, --matrix, --matrix-file or --problem)");
  if (sources > 1) throw ProblemError("system: exactly one system source is allowed");

  if (p.builtin) {
    const std::string& name = *p.builtin;
    if (!kBuiltins.count(name))
      throw ProblemError("system.builtin: unknown '" + name + "' (example1, example5, example8, thomas, cyclic)");
    if (name == "example1") {
      const DenseMatrix a = example1_matrix();
      return {SystemDef::ltv("example1", 4, [a](double) { return a; }), true, name};
    }
    if (name == "example8") {
      const DenseMatrix a = example8_matrix();
      return {SystemDef::ltv("example8", 3, [a](double) { return a; }), true, name};
    }
    if (name == "example5") return {example5_system(), false, name};
    if (name == "thomas") {
      const double b = p.b.value_or(0.1);
      const double c = p.c.value_or(0.0);
      SystemDef sys = thomas_system(b, c);
      return {sys, false, sys.name};
    }
    const std::size_t n = p.n.value_or(4);
    SystemDef sys = cyclic_feedback_system(n, p.delta.value_or(-1));
    return {sys, false, sys.name};
  }

  const MatrixExpression expr = p.matrix_text ? matrix_from_json(json(*p.matrix_text), "system.expression")
                                              : matrix_from_json(*p.matrix_literal, "system.matrix");
  if (expr.rows() != expr.cols())
    throw ProblemError("system: matrix must be square, got " + std::to_string(expr.rows()) + "x" +
                       std::to_string(expr.cols()));
  const bool constant = !expr.depends_on_t();
  return {SystemDef::ltv("matrix", expr.rows(), [expr](double t) { return expr.evaluate(t); }), constant,
          constant ? "constant matrix" : "matrix expression A(t)"};
}

}  // namespace kcompound::cli
