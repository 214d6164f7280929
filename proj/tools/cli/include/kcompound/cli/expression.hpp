#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kcompound/dense_matrix.hpp"

namespace kcompound::cli {

/// Raised for text outside the expression grammar. position() is a 0-based
/// character offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct ExprNode;

/// A scalar expression in t. Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | primary
///   primary := number | 't' | 'pi' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
class ScalarExpression {
 public:
  ScalarExpression();
  explicit ScalarExpression(double constant);
  explicit ScalarExpression(std::shared_ptr<const ExprNode> root);

  static ScalarExpression parse(std::string_view text);

  double evaluate(double t) const;
  bool depends_on_t() const noexcept;

 private:
  std::shared_ptr<const ExprNode> root_;
};

/// A rectangular array of scalar expressions, written "[[e11, e12], [e21, e22]]".
class MatrixExpression {
 public:
  MatrixExpression(std::size_t rows, std::size_t cols, std::vector<ScalarExpression> entries);

  static MatrixExpression parse(std::string_view text);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  DenseMatrix evaluate(double t) const;
  bool depends_on_t() const noexcept;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ScalarExpression> entries_;
};

DenseMatrix parse_matrix_expression(std::string_view text, double t);

/// Numeric literal "[[a, b], [c, d]]" with 17 significant digits per entry.
std::string serialize_matrix_literal(const DenseMatrix& a);

/// "%.17g" rendering of a double.
std::string format_double(double v);

}  // namespace kcompound::cli
