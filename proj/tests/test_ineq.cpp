#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhv/corpus.hpp"
#include "hhv/ineq.hpp"
#include "hhv/quad.hpp"

using namespace hhv;

namespace {

const HInterval I12(1, 2);
const RealFn inv = [](double t) { return 1.0 / t; };
const RealFn ident = [](double t) { return t; };
const RealFn one = [](double) { return 1.0; };
const RealFn neg_ln = [](double t) { return -std::log(t); };

ChainOptions printed() {
  ChainOptions o;
  o.variant = Variant::as_printed;
  return o;
}

void all_equal(const ChainReport& r, double v, double eps) {
  INFO(r.chain_id);
  for (const Term& t : r.terms) {
    INFO(t.label);
    CHECK(std::fabs(t.value - v) <= eps);
  }
  CHECK(r.passed);
}

bool slacks_nonnegative(const ChainReport& r) {
  for (double s : r.slacks) {
    if (s < 0.0) return false;
  }
  return true;
}

void same_terms(const ChainReport& u, const ChainReport& v, double eps) {
  REQUIRE(u.terms.size() == v.terms.size());
  for (std::size_t i = 0; i < u.terms.size(); ++i) {
    CHECK(std::fabs(u.terms[i].value - v.terms[i].value) <= eps);
  }
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(to_string(Variant::as_printed) == "as_printed");
  CHECK(parse_variant("derived_corrected") == Variant::derived_corrected);
  CHECK_FALSE(parse_variant("printed").has_value());
}

TEST_CASE("classic chain") {
  const auto r = chain_hh_classic([](double x) { return std::exp(x); }, 0, 1);
  REQUIRE(r.terms.size() == 3);
  CHECK(r.terms[0].value == doctest::Approx(std::exp(0.5)));
  CHECK(r.terms[1].value == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-12));
  CHECK(r.terms[2].value == doctest::Approx(0.5 * (1.0 + std::numbers::e)));
  CHECK(r.passed);
  CHECK(r.chain_id == "hh");
}

TEST_CASE("t1 examples") {
  all_equal(chain_hh_iscan(inv, I12), 0.75, 1e-10);
  const auto r = chain_hh_iscan(ident, I12);
  CHECK(r.terms[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(std::fabs(r.terms[1].value - 2.0 * std::numbers::ln2) <= 1e-10);
  CHECK(r.terms[2].value == 1.5);
  CHECK(r.passed);
  CHECK(slacks_nonnegative(r));
  // no discrepancy: the variants coincide
  same_terms(chain_hh_iscan(ident, I12, printed()), r, 0.0);
  const HInterval N(-2, -1);
  all_equal(chain_hh_iscan(inv, N), -0.75, 1e-10);
}

TEST_CASE("t2 examples") {
  all_equal(bounds_pointwise(inv, I12, 1.5), 0.75, 1e-12);
  const auto at_a = bounds_pointwise(ident, I12, 1.0);
  CHECK(at_a.terms[1].value == at_a.terms[2].value);
  const auto at_mid = bounds_pointwise(ident, I12, I12.midpoint());
  CHECK(at_mid.terms[1].value == doctest::Approx(at_mid.terms[0].value).epsilon(1e-15));
  CHECK_THROWS_AS(bounds_pointwise(ident, I12, 2.5), std::invalid_argument);
}

TEST_CASE("t3 examples") {
  same_terms(chain_subinterval(ident, I12, 1, 2), chain_hh_iscan(ident, I12), 1e-10);
  all_equal(chain_subinterval([](double) { return 2.5; }, I12, 1.2, 1.7), 2.5, 1e-10);
  all_equal(chain_subinterval(inv, I12, 1.2, 1.8), 0.75, 1e-10);

  const auto p = chain_subinterval(one, I12, 1.2, 1.7, printed());
  CHECK(p.terms[0].value == 1.0);
  CHECK(std::fabs(p.terms[1].value - 0.75) <= 1e-10);
  CHECK(p.terms[2].value == 1.0);
  CHECK_FALSE(p.passed);
  CHECK(p.variant == Variant::as_printed);
  CHECK_THROWS_AS(chain_subinterval(one, I12, 1.3, 1.3), std::invalid_argument);
}

TEST_CASE("r2 examples") {
  all_equal(chain_reflected_pair([](double) { return -3.0; }, I12, 1.1), -3.0, 1e-10);
  all_equal(chain_reflected_pair(inv, I12, 1.1), 0.75, 1e-10);
  const auto r = chain_reflected_pair(ident, I12, 1.1);
  CHECK(r.terms[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r.terms[1].value <= r.terms[2].value);
  CHECK(r.terms[0].value <= r.terms[1].value);
  CHECK(r.passed);
  const auto p = chain_reflected_pair(one, I12, 1.1, printed());
  CHECK(std::fabs(p.terms[1].value - 0.5) <= 1e-10);
  CHECK_FALSE(p.passed);
  CHECK_THROWS_AS(chain_reflected_pair(one, I12, I12.midpoint()), std::invalid_argument);
  // the printed exclusion (a+b)/2 is a legal point
  CHECK_NOTHROW(chain_reflected_pair(one, I12, 1.5));
}

TEST_CASE("refinement examples") {
  all_equal(chain_refinement([](double) { return 4.0; }, I12), 4.0, 1e-10);
  all_equal(chain_refinement(inv, I12), 0.75, 1e-10);

  ChainOptions concave;
  concave.direction = Direction::concave;
  const auto r = chain_refinement(neg_ln, I12, concave);
  CHECK(r.terms[0].value == doctest::Approx(-0.287682).epsilon(1e-6));
  CHECK(r.passed);
  CHECK(slacks_nonnegative(r));
  // reversed ordering: f(x*) on top for this concave input
  CHECK(r.terms[0].value >= r.terms[1].value);
  CHECK(r.terms[1].value >= r.terms[2].value);
  CHECK_FALSE(chain_refinement(neg_ln, I12).passed);
}

TEST_CASE("r3 examples") {
  const auto r = chain_harmonic_full(inv, I12, 1.3, 1.9);
  REQUIRE(r.terms.size() == 4);
  all_equal(r, 0.75, 1e-10);
  const auto full = chain_harmonic_full(ident, I12, 1, 2);
  CHECK(full.terms[0].value == doctest::Approx(full.terms[1].value).epsilon(1e-15));
  const auto s = chain_harmonic_full(ident, I12, 1.25, 1.75);
  CHECK(s.terms[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const double x = 1.25, y = 1.75;
  const double second =
      0.5 * (2 * x * y / (x + y) + 4 * x * y / (2 * x * y * 3 - 2 * (x + y)));
  CHECK(s.terms[1].value == doctest::Approx(second).epsilon(1e-14));
  CHECK(s.terms[0].value <= s.terms[1].value);
  CHECK(s.passed);
}

TEST_CASE("t4 examples") {
  const auto [lo, up] = product_inequalities(inv, inv, I12);
  for (const ChainReport* r : {&lo, &up}) {
    CHECK(r->passed);
    for (const Term& t : r->terms) CHECK(std::fabs(t.value - 9.0 / 16.0) <= 1e-9);
  }
  CHECK(lo.chain_id == "t4-lower");
  CHECK(up.chain_id == "t4-upper");

  const auto [clo, cup] = product_inequalities([](double) { return 3.0; },
                                               [](double) { return 3.0; }, I12);
  for (const ChainReport* r : {&clo, &cup}) {
    for (const Term& t : r->terms) CHECK(std::fabs(t.value - 9.0) <= 1e-10);
  }

  const auto [l2, u2] = product_inequalities(inv, ident, I12);
  const double W = 1.5 * std::numbers::ln2;
  CHECK(std::fabs(l2.terms.back().value - W) <= 1e-10);
  CHECK(std::fabs(u2.terms.front().value - W) <= 1e-10);
  CHECK(l2.passed);
  CHECK(u2.passed);
  CHECK(std::fabs(l2.slacks[0]) <= 1e-10);

  // printed upper coefficient breaks the constant case
  const auto [pl, pu] = product_inequalities([](double) { return 2.0; },
                                             [](double) { return 3.0; }, I12, printed());
  CHECK(pl.passed);
  CHECK(std::fabs(pu.terms.back().value - pu.terms.front().value) > 1e-3);

  // mixed classes reverse both reports
  ChainOptions concave;
  concave.direction = Direction::concave;
  const auto [ml, mu] =
      product_inequalities(inv, [](double t) { return -t; }, I12, concave);
  CHECK(ml.passed);
  CHECK(mu.passed);
}

TEST_CASE("t5 examples") {
  const HFunction id = HFunction::identity();
  for (double x : {1.0, 1.15, 1.5}) {
    for (double y : {1.2, 1.9, 2.0}) {
      same_terms(chain_h_subinterval(neg_ln, id, I12, x, y), chain_subinterval(neg_ln, I12, x, y),
                 1e-10);
    }
  }
  all_equal(chain_h_subinterval([](double) { return 7.0; }, id, I12, 1, 2), 7.0, 1e-10);
  const auto p = chain_h_subinterval(inv, HFunction::parse("1"), I12, 1, 2);
  CHECK(std::fabs(p.terms[0].value - 0.375) <= 1e-12);
  CHECK(std::fabs(p.terms[1].value - 0.75) <= 1e-10);
  CHECK(std::fabs(p.terms[2].value - 1.5) <= 1e-12);
  CHECK(p.passed);
}

TEST_CASE("t6 examples") {
  const HFunction id = HFunction::identity();
  for (double x : {1.0, 1.1, 4.0 / 3.0, 1.6, 2.0}) {
    const auto r = bounds_h_pointwise(ident, id, I12, x);
    same_terms(r, bounds_pointwise(ident, I12, x), 1e-12);
    bool found = false;
    for (const auto& [k, v] : r.extras) {
      if (k == "lambda_sum") {
        found = true;
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
    CHECK(found);
  }
  all_equal(bounds_h_pointwise(inv, id, I12, 1.5), 0.75, 1e-12);
  const auto at_a = bounds_h_pointwise(ident, id, I12, 1.0);
  CHECK(at_a.terms[2].value == doctest::Approx(at_a.terms[1].value).epsilon(1e-15));
  // printed form drops h on one weight: visible with a nonlinear h
  const HFunction sq = HFunction::parse("x^2");
  const auto d = bounds_h_pointwise(one, sq, I12, 1.2);
  const auto pr = bounds_h_pointwise(one, sq, I12, 1.2, printed());
  CHECK(d.terms[2].value != doctest::Approx(pr.terms[2].value));
}

TEST_CASE("c1 examples") {
  const HFunction id = HFunction::identity();
  all_equal(weighted_bounds(inv, id, one, I12), 0.75, 1e-10);
  const auto z = weighted_bounds(inv, id, [](double) { return 0.0; }, I12);
  for (const Term& t : z.terms) CHECK(t.value == 0.0);
  CHECK(z.passed);
  const auto r = weighted_bounds(ident, id, one, I12);
  CHECK(r.terms[0].value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(r.terms[2].value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.terms[0].value <= r.terms[1].value);
  CHECK(r.terms[1].value <= r.terms[2].value);
  CHECK_THROWS_AS(weighted_bounds(ident, id, [](double t) { return t - 1.5; }, I12),
                  std::invalid_argument);
  // the printed right-hand side differs once w is not r-symmetric
  const auto s = weighted_bounds(ident, id, ident, I12);
  double dev = 0.0;
  for (const auto& [k, v] : s.extras) {
    if (k == "rhs_deviation") dev = v;
  }
  CHECK(std::fabs(dev) > 1e-4);
}

TEST_CASE("r4 examples") {
  const HFunction id = HFunction::identity();
  same_terms(chain_h_reflected_pair(ident, id, I12, 1.1), chain_reflected_pair(ident, I12, 1.1),
             1e-10);
  same_terms(chain_h_refinement(ident, id, I12), chain_refinement(ident, I12), 1e-10);
  all_equal(chain_h_refinement(inv, id, I12), 0.75, 1e-10);
  const auto p = chain_h_reflected_pair(one, id, I12, 1.1, printed());
  CHECK(std::fabs(p.terms[1].value - 0.5) <= 1e-10);
  CHECK_FALSE(p.passed);
}

TEST_CASE("constant exactness across every derived chain") {
  const RealFn c = [](double) { return 1.7; };
  const HFunction id = HFunction::identity();
  const double e = 1e-10;
  all_equal(chain_hh_iscan(c, I12), 1.7, e);
  for (double x : {1.0, 1.3, 2.0}) all_equal(bounds_pointwise(c, I12, x), 1.7, e);
  all_equal(chain_subinterval(c, I12, 1.1, 1.9), 1.7, e);
  all_equal(chain_reflected_pair(c, I12, 1.9), 1.7, e);
  all_equal(chain_refinement(c, I12), 1.7, e);
  all_equal(chain_harmonic_full(c, I12, 1.1, 1.9), 1.7, e);
  const auto [lo, up] = product_inequalities(c, c, I12);
  for (const Term& t : lo.terms) CHECK(std::fabs(t.value - 1.7 * 1.7) <= e);
  for (const Term& t : up.terms) CHECK(std::fabs(t.value - 1.7 * 1.7) <= e);
  all_equal(chain_h_subinterval(c, id, I12, 1.1, 1.9), 1.7, e);
  all_equal(bounds_h_pointwise(c, id, I12, 1.6), 1.7, e);
  all_equal(weighted_bounds(c, id, one, I12), 1.7, e);
  all_equal(chain_h_reflected_pair(c, id, I12, 1.2), 1.7, e);
  all_equal(chain_h_refinement(c, id, I12), 1.7, e);
}

TEST_CASE("harmonic-affine functions give equality") {
  const HFunction id = HFunction::identity();
  for (double al : {-2.0, 0.5, 3.0}) {
    for (double be : {-1.0, 0.0, 4.0}) {
      const RealFn f = [=](double t) { return al / t + be; };
      const HInterval I(0.5, 3.0);
      const double v = f(I.midpoint());
      all_equal(chain_hh_iscan(f, I), v, 1e-9);
      all_equal(bounds_pointwise(f, I, 2.2), v, 1e-9);
      all_equal(chain_subinterval(f, I, 0.7, 2.6), v, 1e-9);
      all_equal(chain_reflected_pair(f, I, 0.8), v, 1e-9);
      all_equal(chain_h_subinterval(f, id, I, 0.7, 2.6), v, 1e-9);
    }
  }
}

TEST_CASE("reduction web over the corpus") {
  const HFunction id = HFunction::identity();
  for (const auto& e : builtin_functions()) {
    INFO(e.name);
    const HInterval& I = e.interval;
    const RealFn f = e.spec.callable();
    const double x = I.a() + 0.2 * I.width(), y = I.a() + 0.85 * I.width();
    same_terms(chain_subinterval(f, I, I.a(), I.b()), chain_hh_iscan(f, I), 1e-10);
    same_terms(chain_h_subinterval(f, id, I, x, y), chain_subinterval(f, I, x, y), 1e-10);
    same_terms(bounds_h_pointwise(f, id, I, x), bounds_pointwise(f, I, x), 1e-10);
  }
}

TEST_CASE("error-bar honesty") {
  ChainReport r;
  r.tol = 1e-8;
  r.terms = {{"a", 1.0, 1e-9}, {"b", 1.0 - 1.05e-8, 0.0}};
  r.finalize();
  CHECK(r.passed);  // within tol + error bars
  r.terms[1].value = 1.0 - 1.2e-8;
  r.finalize();
  CHECK_FALSE(r.passed);
  r.direction = Direction::concave;
  r.finalize();
  CHECK(r.passed);
  CHECK(r.slacks[0] == doctest::Approx(1.2e-8));
  r.terms[1].value = std::nan("");
  r.finalize();
  CHECK_FALSE(r.passed);

  // every passed report from a real chain respects the same bound
  for (const auto& e : builtin_functions()) {
    const auto c = chain_refinement(e.spec.callable(), e.interval);
    if (!c.passed) continue;
    for (std::size_t i = 0; i < c.slacks.size(); ++i) {
      CHECK(c.slacks[i] >= -(c.tol + c.terms[i].abs_error + c.terms[i + 1].abs_error));
    }
  }
}

TEST_CASE("discrepancy ledger") {
  const auto& d = discrepancies();
  CHECK(d.size() >= 8);
  for (const char* id : {"t3", "r2-pair", "t4-upper", "t6", "c1"}) {
    bool found = false;
    for (const auto& x : d) found = found || x.chain_id == id;
    CHECK_MESSAGE(found, id);
  }
  for (const auto& x : d) {
    CHECK_FALSE(x.printed.empty());
    CHECK_FALSE(x.derived.empty());
  }
}

TEST_CASE("kink breakpoints tighten the error bars") {
  const RealFn f = [](double t) { return std::max(0.0, 1.001 - t) * 1000.0 + t; };
  ChainOptions o;
  o.breakpoints = {1.001};
  const auto with = chain_hh_iscan(f, I12, o);
  CHECK(with.passed);
  const double exact = 2.0 * (1000.0 * (1.001 * (1.0 - 1.0 / 1.001) - std::log(1.001)) +
                              std::numbers::ln2);
  CHECK(std::fabs(with.terms[1].value - exact) <= 1e-9);
}
