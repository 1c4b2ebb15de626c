#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hhv/fnspec.hpp"

using namespace hhv;

namespace {

// Evaluates, mapping a domain error to NaN so two evaluations can be compared.
double eval_or_nan(const FunctionSpec& f, double t) {
  try {
    return f(t);
  } catch (const DomainError&) {
    return std::nan("");
  }
}

bool same(double u, double v) { return (std::isnan(u) && std::isnan(v)) || u == v; }

NodePtr leaf(std::mt19937_64& rng) {
  auto n = std::make_shared<Node>();
  if (rng() % 2) {
    n->kind = NodeKind::Var;
  } else {
    n->kind = NodeKind::Const;
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    n->value = d(rng);
  }
  return n;
}

NodePtr random_tree(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 4 == 0) return leaf(rng);
  auto n = std::make_shared<Node>();
  static constexpr NodeKind kinds[] = {NodeKind::Neg, NodeKind::Add, NodeKind::Sub, NodeKind::Mul,
                                       NodeKind::Div, NodeKind::Pow, NodeKind::Ln,  NodeKind::Exp,
                                       NodeKind::Abs, NodeKind::Min, NodeKind::Max};
  n->kind = kinds[rng() % std::size(kinds)];
  switch (n->kind) {
    case NodeKind::Neg:
    case NodeKind::Ln:
    case NodeKind::Exp:
    case NodeKind::Abs:
      n->lhs = random_tree(rng, depth - 1);
      break;
    case NodeKind::Pow: {
      n->lhs = random_tree(rng, depth - 1);
      auto e = std::make_shared<Node>();
      e->kind = NodeKind::Const;
      static constexpr double exps[] = {2.0, 3.0, -1.0, 0.5, -2.0, 1.5};
      e->value = exps[rng() % std::size(exps)];
      n->rhs = e;
      break;
    }
    default:
      n->lhs = random_tree(rng, depth - 1);
      n->rhs = random_tree(rng, depth - 1);
  }
  return n;
}

}  // namespace

TEST_CASE("grammar cases") {
  CHECK(parse("-ln(x)").tree() == "Neg(Ln(Var))");
  CHECK(parse("1/x").tree() == "Div(Const 1, Var)");
  CHECK(parse("-x^2")(3.0) == -9.0);
  CHECK(parse("2^-1")(0.0) == 0.5);
  CHECK(parse("2^3^2")(0.0) == 512.0);
  CHECK(parse("2*3+4")(0.0) == 10.0);
  CHECK(parse("2*(3+4)")(0.0) == 14.0);
  CHECK(parse("1 - 2 - 3")(0.0) == -4.0);
  CHECK(parse("8/2/2")(0.0) == 2.0);
  CHECK(parse("min(x, 2) + max(x, 2)")(5.0) == 7.0);
  CHECK(parse("pow(x, 3)")(2.0) == 8.0);
  CHECK(parse("abs(x - 3)")(1.0) == 2.0);
  CHECK(parse("exp(0)")(0.0) == 1.0);
  CHECK(parse("1e-3 * x")(1000.0) == doctest::Approx(1.0));
}

TEST_CASE("syntax errors carry offsets") {
  try {
    parse("ln(");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse("foo(x)"), ParseError);
  CHECK_THROWS_AS(parse("t"), ParseError);
  CHECK_THROWS_AS(parse("e"), ParseError);
  CHECK_THROWS_AS(parse("min(x)"), ParseError);
  CHECK_THROWS_AS(parse("ln(x, 2)"), ParseError);
  CHECK_THROWS_AS(parse("2^x"), ParseError);
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("x)"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("x + foo");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("evaluation and domain errors") {
  CHECK(evaluate(parse("-ln(x)"), std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(evaluate(parse("1/x"), 2.0) == 0.5);
  CHECK_THROWS_AS(evaluate(parse("ln(x)"), -1.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("ln(x)"), 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("1/(x-1)"), 1.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("x^-1"), 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("x^0.5"), -4.0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("exp(x)"), 1000.0), DomainError);
  CHECK(evaluate(parse("x^3"), -2.0) == -8.0);
  CHECK_THROWS_AS(evaluate(parse("x"), std::nan("")), DomainError);

  const FunctionSpec bounded = FunctionSpec::parse("x", Domain{1.0, 2.0});
  CHECK(bounded(1.5) == 1.5);
  CHECK_THROWS_AS(bounded(3.0), DomainError);
}

TEST_CASE("compose") {
  // r(t) = 2t / (3t - 2) on [1, 2]
  const RealFn r = parse("2*x/(3*x - 2)").callable();
  const RealFn f = compose(parse("-ln(x)").callable(), r);
  CHECK(f(1.0) == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
  const RealFn g = parse("x^2 + 1").callable();
  const RealFn id = compose([](double t) { return t; }, g);
  for (double t : {-1.0, 0.0, 0.5, 3.0}) CHECK(id(t) == g(t));
  const RealFn bad = compose(f, parse("ln(x)").callable());
  CHECK_THROWS_AS(bad(-1.0), DomainError);
}

TEST_CASE("literal printing round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  const FunctionSpec f = parse("0.1*x + 1/3");
  CHECK(parse(f.print())(0.7) == f(0.7));
}

TEST_CASE("property: random ASTs survive print and re-parse") {
  std::mt19937_64 rng(20251014);
  std::uniform_real_distribution<double> pt(-4.0, 4.0);
  int compared = 0;
  for (int k = 0; k < 100; ++k) {
    const FunctionSpec f = FunctionSpec::from_tree(random_tree(rng, 6));
    const FunctionSpec g = parse(f.print());
    // Negative literals come back as Neg(Const); after that printing is a fixed point.
    CHECK(parse(g.print()).tree() == g.tree());
    for (int i = 0; i < 50; ++i) {
      const double t = pt(rng);
      const double u = eval_or_nan(f, t), v = eval_or_nan(g, t);
      CHECK(same(u, v));
      compared += std::isfinite(u);
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("property: evaluation never returns NaN or inf") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pt(-10.0, 10.0);
  int errors = 0;
  for (int k = 0; k < 300; ++k) {
    const FunctionSpec f = FunctionSpec::from_tree(random_tree(rng, 6));
    for (int i = 0; i < 40; ++i) {
      const double t = i < 3 ? static_cast<double>(i - 1) : pt(rng);
      double v = 0.0;
      try {
        v = f(t);
      } catch (const DomainError&) {
        ++errors;
        continue;
      }
      CHECK(std::isfinite(v));
    }
  }
  CHECK(errors > 0);  // the fuzzer does reach the error paths
}
