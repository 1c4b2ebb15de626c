#include "hhv/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace hhv {

std::string_view to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::convex: return "convex";
    case ConvexityClass::concave: return "concave";
    case ConvexityClass::harmonic_convex: return "harmonic_convex";
    case ConvexityClass::harmonic_concave: return "harmonic_concave";
    case ConvexityClass::harmonic_h_convex: return "harmonic_h_convex";
    case ConvexityClass::harmonic_h_concave: return "harmonic_h_concave";
    case ConvexityClass::symmetrized_harmonic_convex: return "symmetrized_harmonic_convex";
    case ConvexityClass::symmetrized_harmonic_concave: return "symmetrized_harmonic_concave";
    case ConvexityClass::symmetrized_harmonic_h_convex: return "symmetrized_harmonic_h_convex";
    case ConvexityClass::symmetrized_harmonic_h_concave: return "symmetrized_harmonic_h_concave";
  }
  return "?";
}

std::string_view to_string(Direction d) { return d == Direction::convex ? "convex" : "concave"; }

std::optional<ConvexityClass> parse_class(std::string_view s) {
  struct Alias {
    std::string_view name;
    ConvexityClass cls;
  };
  static constexpr Alias aliases[] = {
      {"hc", ConvexityClass::harmonic_convex},
      {"hcc", ConvexityClass::harmonic_concave},
      {"hhc", ConvexityClass::harmonic_h_convex},
      {"hhcc", ConvexityClass::harmonic_h_concave},
      {"shc", ConvexityClass::symmetrized_harmonic_convex},
      {"shcc", ConvexityClass::symmetrized_harmonic_concave},
      {"shhc", ConvexityClass::symmetrized_harmonic_h_convex},
      {"shhcc", ConvexityClass::symmetrized_harmonic_h_concave},
  };
  for (const auto& a : aliases)
    if (s == a.name) return a.cls;
  for (int i = 0; i <= static_cast<int>(ConvexityClass::symmetrized_harmonic_h_concave); ++i) {
    auto c = static_cast<ConvexityClass>(i);
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

bool needs_h(ConvexityClass c) {
  return c == ConvexityClass::harmonic_h_convex || c == ConvexityClass::harmonic_h_concave ||
         c == ConvexityClass::symmetrized_harmonic_h_convex ||
         c == ConvexityClass::symmetrized_harmonic_h_concave;
}

std::vector<double> SampleGrid::default_weights() {
  std::vector<double> w;
  for (int k = 1; k <= 15; ++k) w.push_back(k / 16.0);
  return w;
}

namespace {

double unit_open(std::mt19937_64& rng) {
  // (k + 1/2) / 2^53 lies strictly inside (0, 1).
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

RealFn negated(const RealFn& f) {
  return [f](double t) { return -f(t); };
}

template <typename Margin>
ConvexityVerdict sweep_margins(ConvexityClass cls, const std::vector<Triple>& triples,
                               Margin&& margin, double tol) {
  ConvexityVerdict v;
  v.class_tested = cls;
  v.tol = tol;
  v.worst_margin = -std::numeric_limits<double>::infinity();
  for (const Triple& t : triples) {
    const double m = margin(t);
    if (m > v.worst_margin) {
      v.worst_margin = m;
      v.witness = t;
    }
  }
  v.samples_used = triples.size();
  v.passed = v.worst_margin <= tol;
  return v;
}

}  // namespace

std::vector<Triple> enumerate_triples(double lo, double hi, const SampleGrid& grid,
                                      const std::vector<double>& extra) {
  if (grid.abscissae < 1) throw std::invalid_argument("sample grid needs at least 1 abscissa");
  if (!(lo < hi)) throw std::invalid_argument("sample range requires lo < hi");
  std::vector<double> nodes;
  const int n = grid.abscissae;
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      nodes.push_back(lo);
    } else if (k == n) {
      nodes.push_back(hi);
    } else {
      nodes.push_back(std::clamp(c - r * std::cos(std::numbers::pi * k / n), lo, hi));
    }
  }
  for (double e : extra)
    if (e >= lo && e <= hi) nodes.push_back(e);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<Triple> triples;
  triples.reserve(nodes.size() * nodes.size() / 2 * grid.weights.size() +
                  static_cast<std::size_t>(std::max(grid.random_triples, 0)));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      for (double w : grid.weights) triples.push_back({nodes[i], nodes[j], w});

  std::mt19937_64 rng(grid.seed);
  for (int k = 0; k < grid.random_triples; ++k) {
    const double x = std::clamp(lo + (hi - lo) * unit_open(rng), lo, hi);
    const double y = std::clamp(lo + (hi - lo) * unit_open(rng), lo, hi);
    const double w = unit_open(rng);
    triples.push_back({x, y, w});
  }
  return triples;
}

double harmonic_margin(const RealFn& f, const Triple& t) {
  return f(hcomb(t.x, t.y, t.alpha)) - (t.alpha * f(t.y) + (1.0 - t.alpha) * f(t.x));
}

double harmonic_h_margin(const RealFn& f, const HFunction& h, const Triple& t) {
  return f(hcomb(t.x, t.y, t.alpha)) - (h(t.alpha) * f(t.y) + h(1.0 - t.alpha) * f(t.x));
}

double convex_margin(const RealFn& F, const Triple& t) {
  const double z = (1.0 - t.alpha) * t.x + t.alpha * t.y;
  return F(z) - ((1.0 - t.alpha) * F(t.x) + t.alpha * F(t.y));
}

ConvexityVerdict check_harmonic_convex(const RealFn& f, const HInterval& I, const SampleGrid& grid,
                                       double tol, Direction dir) {
  const auto cls = dir == Direction::convex ? ConvexityClass::harmonic_convex
                                            : ConvexityClass::harmonic_concave;
  const RealFn g = dir == Direction::convex ? f : negated(f);
  const auto triples = enumerate_triples(I.a(), I.b(), grid, {I.midpoint()});
  return sweep_margins(cls, triples, [&](const Triple& t) { return harmonic_margin(g, t); }, tol);
}

ConvexityVerdict check_harmonic_h_convex(const RealFn& f, const HFunction& h, const HInterval& I,
                                         const SampleGrid& grid, double tol, Direction dir) {
  const auto cls = dir == Direction::convex ? ConvexityClass::harmonic_h_convex
                                            : ConvexityClass::harmonic_h_concave;
  const RealFn g = dir == Direction::convex ? f : negated(f);
  const auto triples = enumerate_triples(I.a(), I.b(), grid, {I.midpoint()});
  return sweep_margins(cls, triples, [&](const Triple& t) { return harmonic_h_margin(g, h, t); },
                       tol);
}

ConvexityVerdict check_symmetrized(const RealFn& f, const HInterval& I, const SampleGrid& grid,
                                   double tol, const HFunction* h, Direction dir) {
  const RealFn fs = sym_transform(f, I);
  ConvexityVerdict v = h ? check_harmonic_h_convex(fs, *h, I, grid, tol, dir)
                         : check_harmonic_convex(fs, I, grid, tol, dir);
  if (h) {
    v.class_tested = dir == Direction::convex ? ConvexityClass::symmetrized_harmonic_h_convex
                                              : ConvexityClass::symmetrized_harmonic_h_concave;
  } else {
    v.class_tested = dir == Direction::convex ? ConvexityClass::symmetrized_harmonic_convex
                                              : ConvexityClass::symmetrized_harmonic_concave;
  }
  return v;
}

ConvexityVerdict check_convex(const RealFn& F, double lo, double hi, const SampleGrid& grid,
                              double tol, Direction dir) {
  const auto cls = dir == Direction::convex ? ConvexityClass::convex : ConvexityClass::concave;
  const RealFn g = dir == Direction::convex ? F : negated(F);
  const auto triples = enumerate_triples(lo, hi, grid, {0.5 * (lo + hi)});
  return sweep_margins(cls, triples, [&](const Triple& t) { return convex_margin(g, t); }, tol);
}

ConvexityVerdict check_class(ConvexityClass c, const RealFn& f, const HInterval& I,
                             const SampleGrid& grid, double tol, const HFunction* h) {
  if (needs_h(c) && !h) throw std::invalid_argument(std::string(to_string(c)) + " requires h");
  switch (c) {
    case ConvexityClass::convex: return check_convex(f, I.a(), I.b(), grid, tol);
    case ConvexityClass::concave:
      return check_convex(f, I.a(), I.b(), grid, tol, Direction::concave);
    case ConvexityClass::harmonic_convex: return check_harmonic_convex(f, I, grid, tol);
    case ConvexityClass::harmonic_concave:
      return check_harmonic_convex(f, I, grid, tol, Direction::concave);
    case ConvexityClass::harmonic_h_convex: return check_harmonic_h_convex(f, *h, I, grid, tol);
    case ConvexityClass::harmonic_h_concave:
      return check_harmonic_h_convex(f, *h, I, grid, tol, Direction::concave);
    case ConvexityClass::symmetrized_harmonic_convex: return check_symmetrized(f, I, grid, tol);
    case ConvexityClass::symmetrized_harmonic_concave:
      return check_symmetrized(f, I, grid, tol, nullptr, Direction::concave);
    case ConvexityClass::symmetrized_harmonic_h_convex:
      return check_symmetrized(f, I, grid, tol, h);
    case ConvexityClass::symmetrized_harmonic_h_concave:
      return check_symmetrized(f, I, grid, tol, h, Direction::concave);
  }
  throw std::invalid_argument("unknown convexity class");
}

double margin_at_witness(const ConvexityVerdict& v, const RealFn& f, const HInterval& I,
                         const HFunction* h) {
  const Triple& t = v.witness;
  const RealFn fs = sym_transform(f, I);
  switch (v.class_tested) {
    case ConvexityClass::convex: return convex_margin(f, t);
    case ConvexityClass::concave: return convex_margin(negated(f), t);
    case ConvexityClass::harmonic_convex: return harmonic_margin(f, t);
    case ConvexityClass::harmonic_concave: return harmonic_margin(negated(f), t);
    case ConvexityClass::harmonic_h_convex: return harmonic_h_margin(f, *h, t);
    case ConvexityClass::harmonic_h_concave: return harmonic_h_margin(negated(f), *h, t);
    case ConvexityClass::symmetrized_harmonic_convex: return harmonic_margin(fs, t);
    case ConvexityClass::symmetrized_harmonic_concave: return harmonic_margin(negated(fs), t);
    case ConvexityClass::symmetrized_harmonic_h_convex: return harmonic_h_margin(fs, *h, t);
    case ConvexityClass::symmetrized_harmonic_h_concave:
      return harmonic_h_margin(negated(fs), *h, t);
  }
  throw std::invalid_argument("unknown convexity class");
}

std::string inclusion_family_text(const HInterval& I, double c) {
  auto lit = [](double v) {
    return v < 0.0 ? "(" + format_double(v) + ")" : format_double(v);
  };
  return "1/x + " + lit(c) + "*(x - " + lit(I.a() * I.b()) + "*x/(" + lit(I.a() + I.b()) +
         "*x - " + lit(I.a() * I.b()) + "))";
}

std::optional<InclusionWitness> find_strict_inclusion_witness(const HInterval& I,
                                                              std::uint64_t seed, double tol,
                                                              double min_margin) {
  SampleGrid grid;
  grid.seed = seed;
  const double threshold = std::max(tol, min_margin);
  for (int k = -20; k <= 20; ++k) {
    const double c = std::ldexp(1.0, k);
    FunctionSpec f = FunctionSpec::parse(inclusion_family_text(I, c));
    const RealFn fn = f.callable();
    ConvexityVerdict hc = check_harmonic_convex(fn, I, grid, tol);
    if (!(hc.worst_margin > threshold)) continue;
    ConvexityVerdict shc = check_symmetrized(fn, I, grid, tol);
    if (!shc.passed) continue;
    return InclusionWitness{c, std::move(f), hc, shc};
  }
  return std::nullopt;
}

namespace logexample {

namespace {
double neg_ln(double t) {
  if (!(t > 0.0)) throw DomainError("ln of non-positive value");
  return -std::log(t);
}
}  // namespace

MidpointViolation midpoint_violation() {
  const double x = std::numbers::e;
  const double y = 2.0 * std::numbers::e;
  const double chord = 0.5 * (neg_ln(x) + neg_ln(y));
  const double mid = neg_ln(hcomb(x, y, 0.5));
  return {x, y, chord, mid, mid - chord};
}

double pullback(const HInterval& I, double u) {
  const TransformedFunction fs = sym_transform(neg_ln, I);
  return fs(1.0 / u);
}

double pullback_closed_form(const HInterval& I, double u) {
  const double ab = I.a() * I.b();
  return 0.5 * std::log(u * (I.a() + I.b() - ab * u) / ab);
}

double pullback_dropped_term(const HInterval& I, double u) {
  const double ab = I.a() * I.b();
  return 0.5 * std::log((I.a() + I.b() - ab * u) / ab);
}

double pullback_second_derivative(const HInterval& I, double u) {
  const double ab = I.a() * I.b();
  const double d = I.a() + I.b() - ab * u;
  return -0.5 * (1.0 / (u * u) + ab * ab / (d * d));
}

double claimed_second_derivative(const HInterval& I, double u) {
  const double ab = I.a() * I.b();
  const double q = ab / (I.a() + I.b() - ab * u);
  return 0.5 * q * q;
}

}  // namespace logexample

}  // namespace hhv
