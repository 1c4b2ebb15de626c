#pragma once

// Expression DSL for real functions of one variable.
//
// Grammar (variable name is `x`):
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)?
//   exponent := '-' exponent | power          (must not contain x)
//   primary  := number | 'x' | call | '(' expr ')'
//   call     := ln(e) | exp(e) | abs(e) | min(e, e) | max(e, e) | pow(e, c)
//
// Precedence is pow > unary minus > * / > + -, so "-x^2" is -(x^2).

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hhv {

using RealFn = std::function<double(double)>;

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Raised when a function is evaluated outside its domain or produces a
/// non-finite value. NaN never escapes an evaluation silently.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Ln, Exp, Abs, Min, Max };

struct Node {
  NodeKind kind = NodeKind::Const;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

struct Domain {
  double lo;
  double hi;
  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
};

/// Immutable parsed function. Cheap to copy; copies share the tree.
class FunctionSpec {
public:
  static FunctionSpec parse(std::string_view text, std::optional<Domain> domain = std::nullopt);
  static FunctionSpec from_tree(NodePtr root, std::optional<Domain> domain = std::nullopt);

  double operator()(double t) const;

  const std::string& source() const noexcept { return source_; }
  const NodePtr& root() const noexcept { return root_; }
  const std::optional<Domain>& domain() const noexcept { return domain_; }

  /// Fully parenthesized text with round-trip literals; re-parses to the same tree.
  std::string print() const;
  /// Structural dump, e.g. "Neg(Ln(Var))".
  std::string tree() const;

  RealFn callable() const;

private:
  std::string source_;
  NodePtr root_;
  std::optional<Domain> domain_;
};

FunctionSpec parse(std::string_view text);
double evaluate(const FunctionSpec& f, double t);

std::string print_node(const Node& n);
std::string tree_node(const Node& n);
double eval_node(const Node& n, double t);
bool contains_variable(const Node& n);

/// (outer o inner)(t) = outer(inner(t)); errors from either side propagate.
RealFn compose(RealFn outer, RealFn inner);

/// Round-trip formatting of a double (17 significant digits).
std::string format_double(double v);

}  // namespace hhv
