#include "hhv/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhv/quad.hpp"

namespace hhv {

std::string_view to_string(Variant v) {
  return v == Variant::as_printed ? "as_printed" : "derived_corrected";
}

std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "as_printed") return Variant::as_printed;
  if (s == "derived_corrected") return Variant::derived_corrected;
  return std::nullopt;
}

void ChainReport::finalize() {
  slacks.clear();
  passed = true;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    const double d = terms[i + 1].value - terms[i].value;
    const double slack = direction == Direction::convex ? d : -d;
    slacks.push_back(slack);
    const double allowance = tol + terms[i].abs_error + terms[i + 1].abs_error;
    if (!(slack >= -allowance)) passed = false;
  }
}

double ChainReport::spread() const {
  if (terms.empty()) return 0.0;
  auto [lo_it, hi_it] = std::minmax_element(
      terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.value < r.value; });
  return hi_it->value - lo_it->value;
}

namespace {

ChainReport start(std::string id, double lo, double hi, const ChainOptions& opt) {
  ChainReport r;
  r.chain_id = std::move(id);
  r.variant = opt.variant;
  r.direction = opt.direction;
  r.tol = opt.tol;
  r.lo = lo;
  r.hi = hi;
  return r;
}

ChainReport start(std::string id, const HInterval& I, const ChainOptions& opt) {
  return start(std::move(id), I.a(), I.b(), opt);
}

Term exact(std::string label, double v) { return {std::move(label), v, 0.0}; }

Term scaled(std::string label, double coef, const QuadResult& q) {
  return {std::move(label), coef * q.value, std::fabs(coef) * q.abs_error_estimate};
}

void require_in(const HInterval& I, double x, const char* name) {
  if (!I.contains(x)) {
    throw std::invalid_argument(std::string(name) + " = " + format_double(x) +
                                " outside the interval");
  }
}

void require_off_midpoint(const HInterval& I, double x) {
  if (std::fabs(x - I.midpoint()) <= 1e-8 * I.width()) {
    throw std::invalid_argument("x must differ from the harmonic midpoint 2ab/(a+b)");
  }
}

double endpoint_mean(const RealFn& f, const HInterval& I) { return 0.5 * (f(I.a()) + f(I.b())); }

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

// Kinks of f together with their reflections, for integrands involving f o r.
std::vector<double> cuts(const ChainOptions& opt, const HInterval& I) {
  std::vector<double> c = opt.breakpoints;
  for (double t : opt.breakpoints) {
    if (I.contains(t)) c.push_back(I.reflect(t));
  }
  return c;
}

}  // namespace

ChainReport chain_hh_classic(const RealFn& f, double lo, double hi, const ChainOptions& opt) {
  if (!(lo < hi)) throw std::invalid_argument("classical chain requires lo < hi");
  ChainReport r = start("hh", lo, hi, opt);
  const QuadResult q = integrate_split(f, lo, hi, opt.breakpoints, opt.quad_tol);
  r.terms.push_back(exact("f((lo+hi)/2)", f(0.5 * (lo + hi))));
  r.terms.push_back(scaled("1/(hi-lo) int f", 1.0 / (hi - lo), q));
  r.terms.push_back(exact("(f(lo)+f(hi))/2", 0.5 * (f(lo) + f(hi))));
  r.finalize();
  return r;
}

ChainReport chain_hh_iscan(const RealFn& f, const HInterval& I, const ChainOptions& opt) {
  ChainReport r = start("t1", I, opt);
  const double k = I.a() * I.b() / I.width();
  const QuadResult q = weighted_integral(f, I, opt.quad_tol, opt.breakpoints);
  r.terms.push_back(exact("f(2ab/(a+b))", f(I.midpoint())));
  r.terms.push_back(scaled("ab/(b-a) int_a^b f/t^2", k, q));
  r.terms.push_back(exact("(f(a)+f(b))/2", endpoint_mean(f, I)));
  r.finalize();
  return r;
}

ChainReport bounds_pointwise(const RealFn& f, const HInterval& I, double x,
                             const ChainOptions& opt) {
  require_in(I, x, "x");
  ChainReport r = start("t2", I, opt);
  r.params["x"] = x;
  r.terms.push_back(exact("f(2ab/(a+b))", f(I.midpoint())));
  r.terms.push_back(exact("f_sym(x)", sym_transform(f, I)(x)));
  r.terms.push_back(exact("(f(a)+f(b))/2", endpoint_mean(f, I)));
  r.finalize();
  return r;
}

namespace {

struct SubintervalParts {
  double left_sum;  // f(H(x,y)) + f(r(H(x,y)))
  double coef;      // xy / (2 (y - x))
  QuadResult direct;
  QuadResult reflected;
  double right_sum;  // f(x) + f(r(x)) + f(y) + f(r(y))
};

SubintervalParts subinterval_parts(const RealFn& f, const HInterval& I, double x, double y,
                                   const ChainOptions& opt) {
  require_in(I, x, "x");
  require_in(I, y, "y");
  if (x == y) throw std::invalid_argument("subinterval chain requires x != y");
  const double hm = hcomb(x, y, 0.5);
  SubintervalParts p;
  p.left_sum = f(hm) + f(I.reflect(hm));
  p.coef = x * y / (2.0 * (y - x));
  p.direct = weighted_integral(f, x, y, opt.quad_tol, opt.breakpoints);
  p.reflected = reflected_weighted_integral(f, I, x, y, opt.quad_tol, opt.breakpoints);
  p.right_sum = f(x) + f(I.reflect(x)) + f(y) + f(I.reflect(y));
  return p;
}

Term subinterval_middle(const SubintervalParts& p, double reflected_weight) {
  const double v = p.coef * (p.direct.value + reflected_weight * p.reflected.value);
  const double e = std::fabs(p.coef) *
                   (p.direct.abs_error_estimate + reflected_weight * p.reflected.abs_error_estimate);
  return {reflected_weight == 1.0 ? "xy/(2(y-x)) [int_x^y f/t^2 + int_r(y)^r(x) f/t^2]"
                                  : "xy/(2(y-x)) [int_x^y f/t^2 + 1/2 int_r(y)^r(x) f/t^2]",
          v, e};
}

}  // namespace

ChainReport chain_subinterval(const RealFn& f, const HInterval& I, double x, double y,
                              const ChainOptions& opt) {
  const SubintervalParts p = subinterval_parts(f, I, x, y, opt);
  ChainReport r = start("t3", I, opt);
  r.params["x"] = x;
  r.params["y"] = y;
  r.terms.push_back(exact("1/2 [f(2xy/(x+y)) + f(2abxy/(2xy(a+b)-ab(x+y)))]", 0.5 * p.left_sum));
  r.terms.push_back(subinterval_middle(p, opt.variant == Variant::as_printed ? 0.5 : 1.0));
  r.terms.push_back(exact("1/4 [f(x) + f(r(x)) + f(y) + f(r(y))]", 0.25 * p.right_sum));
  r.finalize();
  return r;
}

ChainReport chain_reflected_pair(const RealFn& f, const HInterval& I, double x,
                                 const ChainOptions& opt) {
  require_in(I, x, "x");
  require_off_midpoint(I, x);
  ChainReport r = start("r2-pair", I, opt);
  r.params["x"] = x;
  const InnerAverage g = reflected_pair_average(f, I, x, opt.quad_tol, opt.breakpoints);
  const double w = opt.variant == Variant::as_printed ? 0.5 : 1.0;
  r.terms.push_back(exact("f(2ab/(a+b))", f(I.midpoint())));
  r.terms.push_back({w == 1.0 ? "abx/(2ab-(a+b)x) int_x^r(x) f/t^2"
                              : "1/2 abx/(2ab-(a+b)x) int_x^r(x) f/t^2",
                     w * g.value, w * g.abs_error});
  r.terms.push_back(exact("1/2 [f(x) + f(r(x))]", 0.5 * (f(x) + f(I.reflect(x)))));
  r.finalize();
  return r;
}

namespace {

QuadResult mean_sym(const RealFn& f, const HInterval& I, const ChainOptions& opt) {
  const TransformedFunction fs = sym_transform(f, I);
  QuadResult q = integrate_split(fs, I.a(), I.b(), cuts(opt, I), opt.quad_tol);
  q.value /= I.width();
  q.abs_error_estimate /= I.width();
  return q;
}

}  // namespace

ChainReport chain_refinement(const RealFn& f, const HInterval& I, const ChainOptions& opt) {
  ChainReport r = start("r2-refine", I, opt);
  const QuadResult d = refinement_double_integral(f, I, opt.quad_tol, opt.breakpoints);
  const double w = opt.variant == Variant::as_printed ? 0.5 : 1.0;
  r.terms.push_back(exact("f(2ab/(a+b))", f(I.midpoint())));
  r.terms.push_back(scaled(w == 1.0 ? "1/(b-a) int_a^b G(x) dx" : "1/(2(b-a)) int_a^b G(x) dx", w,
                           d));
  r.terms.push_back(scaled("1/(b-a) int_a^b f_sym", 1.0, mean_sym(f, I, opt)));
  r.finalize();
  return r;
}

ChainReport chain_harmonic_full(const RealFn& f, const HInterval& I, double x, double y,
                                const ChainOptions& opt) {
  const ChainReport sub = chain_subinterval(f, I, x, y, opt);
  ChainReport r = start("r3", I, opt);
  r.params = sub.params;
  r.terms.push_back(exact("f(2ab/(a+b))", f(I.midpoint())));
  r.terms.insert(r.terms.end(), sub.terms.begin(), sub.terms.end());
  r.finalize();
  return r;
}

std::pair<ChainReport, ChainReport> product_inequalities(const RealFn& f, const RealFn& g,
                                                         const HInterval& I,
                                                         const ChainOptions& opt) {
  const double k = I.a() * I.b() / I.width();
  const double fa = endpoint_mean(f, I);
  const double ga = endpoint_mean(g, I);
  const double fm = f(I.midpoint());
  const std::vector<double> c = cuts(opt, I);
  const QuadResult qf = weighted_integral(f, I, opt.quad_tol, c);
  const QuadResult qg = weighted_integral(g, I, opt.quad_tol, c);
  const TransformedFunction fs = sym_transform(f, I);
  const QuadResult qw =
      weighted_integral([&](double t) { return fs(t) * g(t); }, I, opt.quad_tol, c);
  const double If = k * qf.value, eIf = k * qf.abs_error_estimate;
  const double Ig = k * qg.value, eIg = k * qg.abs_error_estimate;
  const Term W = scaled("ab/(b-a) int f_sym g/t^2", k, qw);

  ChainReport lower = start("t4-lower", I, opt);
  lower.terms.push_back({"Fab Ig + Gab If - Fab Gab", fa * Ig + ga * If - fa * ga,
                         std::fabs(fa) * eIg + std::fabs(ga) * eIf});
  lower.terms.push_back(W);
  lower.extras = {{"Fab", fa}, {"Gab", ga}, {"If", If}, {"Ig", Ig}, {"f_mid", fm}};
  lower.finalize();

  ChainReport upper = start("t4-upper", I, opt);
  upper.terms.push_back(W);
  const double lead = opt.variant == Variant::as_printed ? fm : ga;
  upper.terms.push_back({opt.variant == Variant::as_printed ? "f_mid If + f_mid Ig - f_mid Gab"
                                                            : "Gab If + f_mid Ig - f_mid Gab",
                         lead * If + fm * Ig - fm * ga,
                         std::fabs(lead) * eIf + std::fabs(fm) * eIg});
  upper.extras = lower.extras;
  upper.finalize();
  return {std::move(lower), std::move(upper)};
}

ChainReport chain_h_subinterval(const RealFn& f, const HFunction& h, const HInterval& I, double x,
                                double y, const ChainOptions& opt) {
  const SubintervalParts p = subinterval_parts(f, I, x, y, opt);
  ChainReport r = start("t5", I, opt);
  r.params["x"] = x;
  r.params["y"] = y;
  r.functions["h"] = h.name();
  const double hint = h.h_int();
  r.terms.push_back(exact("1/(4h(1/2)) [f(2xy/(x+y)) + f(2abxy/(2xy(a+b)-ab(x+y)))]",
                          p.left_sum / (4.0 * h.h_half())));
  r.terms.push_back(subinterval_middle(p, 1.0));
  r.terms.push_back({"1/2 [f(x) + f(r(x)) + f(y) + f(r(y))] int_0^1 h", 0.5 * p.right_sum * hint,
                     0.5 * std::fabs(p.right_sum) * h.h_int_result().abs_error_estimate});
  r.finalize();
  return r;
}

ChainReport bounds_h_pointwise(const RealFn& f, const HFunction& h, const HInterval& I, double x,
                               const ChainOptions& opt) {
  require_in(I, x, "x");
  ChainReport r = start("t6", I, opt);
  r.params["x"] = x;
  r.functions["h"] = h.name();
  const auto [lb, la] = I.endpoint_weights(x);
  const double hb = h(clamp_unit(lb));
  const double ha = h(clamp_unit(la));
  const double fa = endpoint_mean(f, I);
  r.terms.push_back(exact("f(2ab/(a+b)) / (2h(1/2))", f(I.midpoint()) / (2.0 * h.h_half())));
  r.terms.push_back(exact("f_sym(x)", sym_transform(f, I)(x)));
  if (opt.variant == Variant::as_printed) {
    r.terms.push_back(exact("[lambda_b + h(lambda_a)] (f(a)+f(b))/2", (lb + ha) * fa));
  } else {
    r.terms.push_back(exact("[h(lambda_b) + h(lambda_a)] (f(a)+f(b))/2", (hb + ha) * fa));
  }
  r.extras = {{"lambda_b", lb}, {"lambda_a", la}, {"lambda_sum", lb + la}};
  r.finalize();
  return r;
}

ChainReport weighted_bounds(const RealFn& f, const HFunction& h, const RealFn& w,
                            const HInterval& I, const ChainOptions& opt) {
  for (int k = 0; k <= 256; ++k) {
    const double t = I.a() + I.width() * k / 256.0;
    if (w(t) < 0.0) {
      throw std::invalid_argument("weight w is negative at t = " + format_double(t));
    }
  }
  ChainReport r = start("c1", I, opt);
  r.functions["h"] = h.name();
  const double qt = opt.quad_tol;
  const std::vector<double> c = cuts(opt, I);
  const double fa = endpoint_mean(f, I);
  const QuadResult qw = integrate(w, I.a(), I.b(), qt);
  const QuadResult qm = integrate_split(
      [&](double t) { return w(t) * (f(t) + f(I.reflect(t))); }, I.a(), I.b(), c, qt);
  const QuadResult qd = integrate(
      [&](double t) {
        const auto [lb, la] = I.endpoint_weights(t);
        return (h(clamp_unit(lb)) + h(clamp_unit(la))) * w(t);
      },
      I.a(), I.b(), qt);
  const QuadResult qp = integrate(
      [&](double t) {
        const auto [lb, la] = I.endpoint_weights(t);
        return h(clamp_unit(lb)) * (w(t) + w(I.reflect(t)));
      },
      I.a(), I.b(), qt);

  r.terms.push_back(scaled("f(2ab/(a+b)) / (2h(1/2)) int w",
                           f(I.midpoint()) / (2.0 * h.h_half()), qw));
  r.terms.push_back(scaled("1/2 int w(t) [f(t) + f(r(t))]", 0.5, qm));
  const Term derived = scaled("(f(a)+f(b))/2 int [h(lambda_b) + h(lambda_a)] w", fa, qd);
  const Term printed = scaled("(f(a)+f(b))/2 int h(lambda_b) [w(t) + w(r(t))]", fa, qp);
  r.terms.push_back(opt.variant == Variant::as_printed ? printed : derived);
  r.extras = {{"derived_rhs", derived.value},
              {"printed_rhs", printed.value},
              {"rhs_deviation", printed.value - derived.value}};
  r.finalize();
  return r;
}

ChainReport chain_h_reflected_pair(const RealFn& f, const HFunction& h, const HInterval& I,
                                   double x, const ChainOptions& opt) {
  require_in(I, x, "x");
  require_off_midpoint(I, x);
  ChainReport r = start("r4-pair", I, opt);
  r.params["x"] = x;
  r.functions["h"] = h.name();
  const InnerAverage g = reflected_pair_average(f, I, x, opt.quad_tol, opt.breakpoints);
  const double pair = f(x) + f(I.reflect(x));
  const double w = opt.variant == Variant::as_printed ? 0.5 : 1.0;
  r.terms.push_back(exact("f(2ab/(a+b)) / (2h(1/2))", f(I.midpoint()) / (2.0 * h.h_half())));
  r.terms.push_back({w == 1.0 ? "abx/(2ab-(a+b)x) int_x^r(x) f/t^2"
                              : "1/2 abx/(2ab-(a+b)x) int_x^r(x) f/t^2",
                     w * g.value, w * g.abs_error});
  r.terms.push_back({w == 1.0 ? "[f(x) + f(r(x))] int_0^1 h" : "1/2 [f(x) + f(r(x))] int_0^1 h",
                     w * pair * h.h_int(),
                     w * std::fabs(pair) * h.h_int_result().abs_error_estimate});
  r.finalize();
  return r;
}

ChainReport chain_h_refinement(const RealFn& f, const HFunction& h, const HInterval& I,
                               const ChainOptions& opt) {
  ChainReport r = start("r4-refine", I, opt);
  r.functions["h"] = h.name();
  const QuadResult d = refinement_double_integral(f, I, opt.quad_tol, opt.breakpoints);
  const QuadResult m = mean_sym(f, I, opt);
  const double fm = f(I.midpoint());
  const double he = h.h_int_result().abs_error_estimate;
  if (opt.variant == Variant::as_printed) {
    r.terms.push_back(exact("f(2ab/(a+b)) / (4h(1/2))", fm / (4.0 * h.h_half())));
    r.terms.push_back(scaled("1/(4(b-a)) int_a^b G(x) dx", 0.25, d));
    r.terms.push_back({"1/(b-a) int_a^b f_sym * int_0^1 h", m.value * h.h_int(),
                       m.abs_error_estimate * h.h_int() + std::fabs(m.value) * he});
  } else {
    r.terms.push_back(exact("f(2ab/(a+b)) / (2h(1/2))", fm / (2.0 * h.h_half())));
    r.terms.push_back(scaled("1/(b-a) int_a^b G(x) dx", 1.0, d));
    r.terms.push_back({"2 int_0^1 h * 1/(b-a) int_a^b f_sym", 2.0 * m.value * h.h_int(),
                       2.0 * (m.abs_error_estimate * h.h_int() + std::fabs(m.value) * he)});
  }
  r.finalize();
  return r;
}

const std::vector<Discrepancy>& discrepancies() {
  static const std::vector<Discrepancy> list = {
      {"t3", "middle term weights the reflected integral by 1/2",
       "both integrals carry weight 1 (substitution u = r(t) maps one onto the other)"},
      {"r2-pair", "middle term carries an extra factor 1/2",
       "coefficient abx/(2ab-(a+b)x); constants give equality"},
      {"r2-pair", "excluded point written as (a+b)/2",
       "excluded point is 2ab/(a+b), where 2ab-(a+b)x vanishes"},
      {"r2-refine", "double integral scaled by 1/(2(b-a))", "scaled by 1/(b-a)"},
      {"t4-upper", "integral of f/t^2 multiplied by f(2ab/(a+b))",
       "integral of f/t^2 multiplied by (g(a)+g(b))/2"},
      {"t4", "midpoint written as ab/(2(a+b)) in the argument",
       "harmonic midpoint 2ab/(a+b)"},
      {"t6", "upper weight lambda_b appears without h", "h(lambda_b) + h(lambda_a)"},
      {"c1", "change of variables drops the Jacobian r(s)^2/s^2",
       "right side integrates [h(lambda_b) + h(lambda_a)] w"},
      {"r4-pair", "middle and right terms carry an extra factor 1/2", "no factor 1/2"},
      {"r4-refine", "left 1/(4h(1/2)), middle 1/(4(b-a)), right int h",
       "left 1/(2h(1/2)), middle 1/(b-a), right 2 int h"},
      {"log-example", "pullback of f_sym for f = -ln drops the ln(u) term",
       "F(u) = 1/2 ln(u (a+b-abu)/(ab)), which is concave"},
      {"log-example", "curvature stated as +1/2 (ab/(a+b-abu))^2",
       "F''(u) = -1/2 [1/u^2 + (ab)^2/(a+b-abu)^2] < 0"},
  };
  return list;
}

}  // namespace hhv
