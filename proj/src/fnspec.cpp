#include "hhv/fnspec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace hhv {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

NodePtr make_leaf(NodeKind k, double v = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = v;
  return n;
}

NodePtr make_node(NodeKind k, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
};

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    if (cur_.kind != Tok::End) {
      throw ParseError("unexpected token '" + cur_.text + "'", cur_.offset);
    }
    return e;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, 0, {}};

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, start, "<end>"};
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Ident, start, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': cur_ = {Tok::Plus, start, "+"}; return;
      case '-': cur_ = {Tok::Minus, start, "-"}; return;
      case '*': cur_ = {Tok::Star, start, "*"}; return;
      case '/': cur_ = {Tok::Slash, start, "/"}; return;
      case '^': cur_ = {Tok::Caret, start, "^"}; return;
      case '(': cur_ = {Tok::LParen, start, "("}; return;
      case ')': cur_ = {Tok::RParen, start, ")"}; return;
      case ',': cur_ = {Tok::Comma, start, ","}; return;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  void lex_number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (!std::isfinite(v)) throw ParseError("literal out of range", start);
    cur_ = {Tok::Number, start, text, v};
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) {
      throw ParseError(std::string("expected ") + what, cur_.offset);
    }
    advance();
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      NodeKind k = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make_node(k, lhs, parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      NodeKind k = cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = make_node(k, lhs, parse_unary());
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return make_node(NodeKind::Neg, parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      std::size_t at = cur_.offset;
      NodePtr ex = parse_exponent();
      if (contains_variable(*ex)) throw ParseError("exponent must be constant", at);
      return make_node(NodeKind::Pow, base, ex);
    }
    return base;
  }

  NodePtr parse_exponent() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return make_node(NodeKind::Neg, parse_exponent());
    }
    return parse_power();
  }

  NodePtr parse_primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        double v = cur_.number;
        advance();
        return make_leaf(NodeKind::Const, v);
      }
      case Tok::LParen: {
        advance();
        NodePtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: return parse_ident();
      case Tok::End: throw ParseError("expected expression", cur_.offset);
      default: throw ParseError("unexpected token '" + cur_.text + "'", cur_.offset);
    }
  }

  NodePtr parse_ident() {
    Token id = cur_;
    advance();
    if (id.text == "x") return make_leaf(NodeKind::Var);

    struct Builtin {
      const char* name;
      NodeKind kind;
      int arity;
    };
    static constexpr Builtin builtins[] = {
        {"ln", NodeKind::Ln, 1},   {"exp", NodeKind::Exp, 1}, {"abs", NodeKind::Abs, 1},
        {"min", NodeKind::Min, 2}, {"max", NodeKind::Max, 2}, {"pow", NodeKind::Pow, 2},
    };
    const Builtin* fn = nullptr;
    for (const auto& b : builtins)
      if (id.text == b.name) fn = &b;
    if (!fn) throw ParseError("unknown identifier '" + id.text + "'", id.offset);

    expect(Tok::LParen, "'(' after function name");
    std::vector<NodePtr> args;
    std::vector<std::size_t> arg_offsets;
    if (cur_.kind != Tok::RParen) {
      arg_offsets.push_back(cur_.offset);
      args.push_back(parse_expr());
      while (cur_.kind == Tok::Comma) {
        advance();
        arg_offsets.push_back(cur_.offset);
        args.push_back(parse_expr());
      }
    }
    expect(Tok::RParen, "')'");
    if (static_cast<int>(args.size()) != fn->arity) {
      throw ParseError("function '" + id.text + "' expects " + std::to_string(fn->arity) +
                           " argument(s), got " + std::to_string(args.size()),
                       id.offset);
    }
    if (fn->kind == NodeKind::Pow && contains_variable(*args[1]))
      throw ParseError("exponent must be constant", arg_offsets[1]);
    return make_node(fn->kind, args[0], fn->arity == 2 ? args[1] : nullptr);
  }
};

double checked(double v, const char* op) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + op);
  return v;
}

}  // namespace

bool contains_variable(const Node& n) {
  if (n.kind == NodeKind::Var) return true;
  return (n.lhs && contains_variable(*n.lhs)) || (n.rhs && contains_variable(*n.rhs));
}

double eval_node(const Node& n, double t) {
  switch (n.kind) {
    case NodeKind::Const: return n.value;
    case NodeKind::Var: return t;
    case NodeKind::Neg: return -eval_node(*n.lhs, t);
    case NodeKind::Add: return checked(eval_node(*n.lhs, t) + eval_node(*n.rhs, t), "+");
    case NodeKind::Sub: return checked(eval_node(*n.lhs, t) - eval_node(*n.rhs, t), "-");
    case NodeKind::Mul: return checked(eval_node(*n.lhs, t) * eval_node(*n.rhs, t), "*");
    case NodeKind::Div: {
      double num = eval_node(*n.lhs, t);
      double den = eval_node(*n.rhs, t);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "/");
    }
    case NodeKind::Pow: {
      double base = eval_node(*n.lhs, t);
      double ex = eval_node(*n.rhs, t);
      if (base == 0.0 && ex < 0.0) throw DomainError("zero raised to a negative power");
      if (base < 0.0 && ex != std::trunc(ex))
        throw DomainError("negative base with non-integer exponent");
      return checked(std::pow(base, ex), "pow");
    }
    case NodeKind::Ln: {
      double v = eval_node(*n.lhs, t);
      if (!(v > 0.0)) throw DomainError("ln of non-positive value");
      return checked(std::log(v), "ln");
    }
    case NodeKind::Exp: return checked(std::exp(eval_node(*n.lhs, t)), "exp");
    case NodeKind::Abs: return std::fabs(eval_node(*n.lhs, t));
    case NodeKind::Min: return std::fmin(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
    case NodeKind::Max: return std::fmax(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
  }
  throw DomainError("corrupt expression tree");
}

std::string print_node(const Node& n) {
  auto bin = [&](const char* op) {
    return "(" + print_node(*n.lhs) + " " + op + " " + print_node(*n.rhs) + ")";
  };
  switch (n.kind) {
    case NodeKind::Const:
      return n.value < 0.0 ? "(-" + format_double(-n.value) + ")" : format_double(n.value);
    case NodeKind::Var: return "x";
    case NodeKind::Neg: return "(-" + print_node(*n.lhs) + ")";
    case NodeKind::Add: return bin("+");
    case NodeKind::Sub: return bin("-");
    case NodeKind::Mul: return bin("*");
    case NodeKind::Div: return bin("/");
    case NodeKind::Pow: return "(" + print_node(*n.lhs) + "^" + print_node(*n.rhs) + ")";
    case NodeKind::Ln: return "ln(" + print_node(*n.lhs) + ")";
    case NodeKind::Exp: return "exp(" + print_node(*n.lhs) + ")";
    case NodeKind::Abs: return "abs(" + print_node(*n.lhs) + ")";
    case NodeKind::Min: return "min(" + print_node(*n.lhs) + ", " + print_node(*n.rhs) + ")";
    case NodeKind::Max: return "max(" + print_node(*n.lhs) + ", " + print_node(*n.rhs) + ")";
  }
  return "?";
}

std::string tree_node(const Node& n) {
  auto un = [&](const char* name) { return std::string(name) + "(" + tree_node(*n.lhs) + ")"; };
  auto bin = [&](const char* name) {
    return std::string(name) + "(" + tree_node(*n.lhs) + ", " + tree_node(*n.rhs) + ")";
  };
  switch (n.kind) {
    case NodeKind::Const: return "Const " + format_double(n.value);
    case NodeKind::Var: return "Var";
    case NodeKind::Neg: return un("Neg");
    case NodeKind::Add: return bin("Add");
    case NodeKind::Sub: return bin("Sub");
    case NodeKind::Mul: return bin("Mul");
    case NodeKind::Div: return bin("Div");
    case NodeKind::Pow: return bin("Pow");
    case NodeKind::Ln: return un("Ln");
    case NodeKind::Exp: return un("Exp");
    case NodeKind::Abs: return un("Abs");
    case NodeKind::Min: return bin("Min");
    case NodeKind::Max: return bin("Max");
  }
  return "?";
}

FunctionSpec FunctionSpec::parse(std::string_view text, std::optional<Domain> domain) {
  FunctionSpec f;
  f.source_ = std::string(text);
  f.root_ = Parser(text).parse_all();
  f.domain_ = domain;
  return f;
}

FunctionSpec FunctionSpec::from_tree(NodePtr root, std::optional<Domain> domain) {
  if (!root) throw std::invalid_argument("empty expression tree");
  FunctionSpec f;
  f.root_ = std::move(root);
  f.source_ = print_node(*f.root_);
  f.domain_ = domain;
  return f;
}

double FunctionSpec::operator()(double t) const {
  if (!std::isfinite(t)) throw DomainError("non-finite abscissa");
  if (domain_ && !domain_->contains(t)) {
    throw DomainError("abscissa " + format_double(t) + " outside declared domain");
  }
  return eval_node(*root_, t);
}

std::string FunctionSpec::print() const { return print_node(*root_); }
std::string FunctionSpec::tree() const { return tree_node(*root_); }

RealFn FunctionSpec::callable() const {
  return [self = *this](double t) { return self(t); };
}

FunctionSpec parse(std::string_view text) { return FunctionSpec::parse(text); }

double evaluate(const FunctionSpec& f, double t) { return f(t); }

RealFn compose(RealFn outer, RealFn inner) {
  return [outer = std::move(outer), inner = std::move(inner)](double t) {
    return outer(inner(t));
  };
}

}  // namespace hhv
