#include "hhv/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace hhv {

namespace {

// Kronrod abscissae on [0,1) descending from the endpoint; odd indices are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi;
};

struct Panel {
  double kronrod;
  double error;
  double abs_kronrod;
};

double sample(const RealFn& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    throw DomainError("integrand is non-finite at t = " + format_double(t));
  }
  return v;
}

Panel gk15(const RealFn& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, center);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  double ak = std::fabs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = sample(f, center - dx);
    const double f2 = sample(f, center + dx);
    k += kWgk[j] * (f1 + f2);
    ak += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  return {k * half, std::fabs((k - g) * half), ak * std::fabs(half)};
}

}  // namespace

QuadResult integrate(const RealFn& f, double lo, double hi, double tol,
                     std::size_t max_evaluations) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("integrate: limits must be finite");
  }
  QuadResult out;
  if (lo == hi) return out;
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  const double range = hi - lo;
  const double min_width = range * 1e-13;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<Segment> stack{{lo, hi}};
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    if (out.evaluations + 15 > max_evaluations) {
      throw QuadratureError("integration budget of " + std::to_string(max_evaluations) +
                            " evaluations exhausted on [" + format_double(lo) + ", " +
                            format_double(hi) + "]");
    }
    const Panel p = gk15(f, s.lo, s.hi);
    out.evaluations += 15;
    const double width = s.hi - s.lo;
    const double local_tol = std::max(tol * width / range, 50.0 * eps * p.abs_kronrod);
    if (p.error <= local_tol || width <= min_width) {
      out.value += p.kronrod;
      out.abs_error_estimate += p.error;
      ++out.subdivisions;
      continue;
    }
    const double mid = 0.5 * (s.lo + s.hi);
    stack.push_back({mid, s.hi});
    stack.push_back({s.lo, mid});
  }
  out.value *= sign;
  return out;
}

QuadResult weighted_integral(const RealFn& f, double x, double y, double tol,
                             const std::vector<double>& breaks) {
  return integrate_split([&f](double t) { return f(t) / (t * t); }, x, y, breaks, tol);
}

QuadResult weighted_integral(const RealFn& f, const HInterval& I, double tol,
                             const std::vector<double>& breaks) {
  return weighted_integral(f, I.a(), I.b(), tol, breaks);
}

QuadResult reflected_weighted_integral(const RealFn& f, const HInterval& I, double x, double y,
                                       double tol, const std::vector<double>& breaks) {
  return weighted_integral(f, I.reflect(y), I.reflect(x), tol, breaks);
}

QuadResult integrate_split(const RealFn& f, double lo, double hi, const std::vector<double>& breaks,
                           double tol, std::size_t max_evaluations) {
  const double sign = lo <= hi ? 1.0 : -1.0;
  if (lo > hi) std::swap(lo, hi);
  std::vector<double> cuts{lo};
  for (double t : breaks) {
    if (t > lo && t < hi) cuts.push_back(t);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(hi);
  QuadResult out;
  const double range = hi - lo;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    const double piece_tol = range > 0.0 ? tol * (cuts[i + 1] - cuts[i]) / range : tol;
    const QuadResult q = integrate(f, cuts[i], cuts[i + 1], piece_tol,
                                   max_evaluations - std::min(max_evaluations, out.evaluations));
    out.value += q.value;
    out.abs_error_estimate += q.abs_error_estimate;
    out.subdivisions += q.subdivisions;
    out.evaluations += q.evaluations;
  }
  out.value *= sign;
  return out;
}

InnerAverage reflected_pair_average(const RealFn& f, const HInterval& I, double x, double tol,
                                    const std::vector<double>& breaks) {
  const double a = I.a();
  const double b = I.b();
  const double xm = I.midpoint();
  if (std::fabs(x - xm) <= 1e-8 * (b - a)) return {f(xm), 0.0};
  const double ab = a * b;
  const double coef = ab * x / (2.0 * ab - (a + b) * x);
  const double inner_tol = tol / std::fabs(coef);
  const QuadResult inner = weighted_integral(f, x, I.reflect(x), inner_tol, breaks);
  return {coef * inner.value, std::fabs(coef) * inner.abs_error_estimate};
}

QuadResult refinement_double_integral(const RealFn& f, const HInterval& I, double tol,
                                      const std::vector<double>& breaks) {
  double worst_inner = 0.0;
  std::size_t inner_evals = 0;
  auto G = [&](double x) {
    const InnerAverage g = reflected_pair_average(f, I, x, tol, breaks);
    worst_inner = std::max(worst_inner, g.abs_error);
    ++inner_evals;
    return g.value;
  };
  std::vector<double> outer_breaks;
  if (!breaks.empty()) {
    outer_breaks.push_back(I.midpoint());
    for (double t : breaks) {
      if (I.contains(t)) {
        outer_breaks.push_back(t);
        outer_breaks.push_back(I.reflect(t));
      }
    }
  }
  QuadResult outer = integrate_split(G, I.a(), I.b(), outer_breaks, tol);
  const double w = I.width();
  outer.value /= w;
  outer.abs_error_estimate = outer.abs_error_estimate / w + worst_inner;
  outer.evaluations = inner_evals;
  return outer;
}

double second_derivative(const RealFn& F, double x, double h0, int levels) {
  if (levels < 1) throw std::invalid_argument("second_derivative: levels must be >= 1");
  // prev[j] / cur[j]: row i-1 / row i of the Richardson tableau.
  std::vector<double> prev, cur;
  const double fx = F(x);
  double h = h0;
  for (int i = 0; i < levels; ++i) {
    cur.assign(static_cast<std::size_t>(i + 1), 0.0);
    cur[0] = (F(x + h) - 2.0 * fx + F(x - h)) / (h * h);
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    prev.swap(cur);
    h *= 0.5;
  }
  return prev.back();
}

}  // namespace hhv
