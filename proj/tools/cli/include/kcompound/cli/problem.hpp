#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kcompound/cli/expression.hpp"
#include "kcompound/dynamics.hpp"

namespace kcompound::cli {

/// Malformed problem file or parameter. The message names the offending
/// field (and line/column for JSON syntax errors).
class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every task parameter, gathered from a problem file and then from
/// command-line flags (flags win).
struct Params {
  std::string command;

  std::optional<std::string> builtin;
  std::optional<std::string> matrix_text;
  std::optional<std::string> matrix_file;
  std::optional<nlohmann::json> matrix_literal;

  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::optional<std::string> kind;
  std::optional<std::string> norm;
  std::optional<std::string> property;
  std::optional<std::string> task;
  std::optional<TimeSpan> t_span;
  std::optional<double> step;
  std::optional<double> t;
  std::optional<Vector> x0;
  std::optional<Vector> x;
  std::optional<Vector> d;
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> s;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> n;
  std::optional<int> delta;
  std::optional<double> reducible_fraction;

  /// Canonical record of the effective inputs; hashed into input_digest.
  nlohmann::json to_json() const;
};

/// Reads a schema_version 1 problem file into `params`. The file's task must
/// equal params.command.
void load_problem_file(const std::string& path, Params& params);

/// Same, from already-read text; `origin` labels diagnostics.
void load_problem_text(const std::string& text, const std::string& origin, Params& params);

/// Fills `params` fields from the flag overrides that are set.
void merge_overrides(Params& params, const Params& overrides);

/// Replaces params.matrix_file by the parsed file contents in
/// params.matrix_literal (the path is kept for the record).
void read_matrix_file(Params& params);

TimeSpan parse_time_span(const std::string& text);
Vector parse_vector(const std::string& text, const std::string& field);

/// Matrix literal: array of arrays whose entries are numbers or expression strings.
MatrixExpression matrix_from_json(const nlohmann::json& literal, const std::string& field);

struct ResolvedSystem {
  SystemDef system;
  /// true when A(t) does not depend on t (LTV only).
  bool constant = false;
  std::string label;
};

ResolvedSystem resolve_system(const Params& params);

}  // namespace kcompound::cli
