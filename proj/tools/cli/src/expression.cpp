#include "kcompound/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace kcompound::cli {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

struct ExprNode {
  enum class Op { Constant, Time, Neg, Add, Sub, Mul, Div, Sin, Cos, Exp };
  Op op = Op::Constant;
  double value = 0.0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->value = value;
  return n;
}

double eval(const ExprNode& n, double t) {
  using Op = ExprNode::Op;
  switch (n.op) {
    case Op::Constant:
      return n.value;
    case Op::Time:
      return t;
    case Op::Neg:
      return -eval(*n.lhs, t);
    case Op::Add:
      return eval(*n.lhs, t) + eval(*n.rhs, t);
    case Op::Sub:
      return eval(*n.lhs, t) - eval(*n.rhs, t);
    case Op::Mul:
      return eval(*n.lhs, t) * eval(*n.rhs, t);
    case Op::Div:
      return eval(*n.lhs, t) / eval(*n.rhs, t);
    case Op::Sin:
      return std::sin(eval(*n.lhs, t));
    case Op::Cos:
      return std::cos(eval(*n.lhs, t));
    case Op::Exp:
      return std::exp(eval(*n.lhs, t));
  }
  return 0.0;
}

bool uses_t(const ExprNode& n) {
  if (n.op == ExprNode::Op::Time) return true;
  return (n.lhs && uses_t(*n.lhs)) || (n.rhs && uses_t(*n.rhs));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_scalar() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  MatrixExpression parse_matrix() {
    std::vector<ScalarExpression> entries;
    std::size_t cols = 0;
    std::size_t rows = 0;
    expect('[');
    do {
      const std::size_t row_start = pos_;
      expect('[');
      std::size_t count = 0;
      do {
        entries.push_back(ScalarExpression(expr()));
        ++count;
      } while (accept(','));
      expect(']');
      if (rows == 0) {
        cols = count;
      } else if (count != cols) {
        throw ParseError("row " + std::to_string(rows + 1) + " has " + std::to_string(count) + " entries, expected " +
                             std::to_string(cols),
                         row_start);
      }
      ++rows;
    } while (accept(','));
    expect(']');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return MatrixExpression(rows, cols, std::move(entries));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(ExprNode::Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(ExprNode::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(ExprNode::Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_node(ExprNode::Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(ExprNode::Op::Neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "t") return make_node(ExprNode::Op::Time);
      if (word == "pi") return make_node(ExprNode::Op::Constant, nullptr, nullptr, std::numbers::pi);
      ExprNode::Op op;
      if (word == "sin") {
        op = ExprNode::Op::Sin;
      } else if (word == "cos") {
        op = ExprNode::Op::Cos;
      } else if (word == "exp") {
        op = ExprNode::Op::Exp;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make_node(op, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make_node(ExprNode::Op::Constant, nullptr, nullptr, value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpression::ScalarExpression() : ScalarExpression(0.0) {}

ScalarExpression::ScalarExpression(double constant)
    : root_(make_node(ExprNode::Op::Constant, nullptr, nullptr, constant)) {}

ScalarExpression::ScalarExpression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

ScalarExpression ScalarExpression::parse(std::string_view text) { return ScalarExpression(Parser(text).parse_scalar()); }

double ScalarExpression::evaluate(double t) const { return eval(*root_, t); }

bool ScalarExpression::depends_on_t() const noexcept { return uses_t(*root_); }

MatrixExpression::MatrixExpression(std::size_t rows, std::size_t cols, std::vector<ScalarExpression> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0 || entries_.size() != rows_ * cols_)
    throw std::invalid_argument("MatrixExpression: entry count does not match shape");
}

MatrixExpression MatrixExpression::parse(std::string_view text) { return Parser(text).parse_matrix(); }

DenseMatrix MatrixExpression::evaluate(double t) const {
  DenseMatrix a(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(i, j) = entries_[i * cols_ + j].evaluate(t);
  return a;
}

bool MatrixExpression::depends_on_t() const noexcept {
  for (const auto& e : entries_)
    if (e.depends_on_t()) return true;
  return false;
}

DenseMatrix parse_matrix_expression(std::string_view text, double t) { return MatrixExpression::parse(text).evaluate(t); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_matrix_literal(const DenseMatrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ", ";
      out += format_double(a(i, j));
    }
    out += ']';
  }
  out += ']';
  return out;
}

}  // namespace kcompound::cli
