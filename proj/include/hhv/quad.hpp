#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with |K15 - G7| as the
// per-segment error estimate, plus the weighted and reflected integrals
// and the nested refinement integral used by the inequality chains.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hhv/fnspec.hpp"
#include "hhv/hmean.hpp"

namespace hhv {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t subdivisions = 0;
  std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEvaluationBudget = 1'000'000;

/// Signed integral of f over [lo, hi] (lo > hi flips the sign). Segments are
/// accepted once their estimate drops below tol * width / range, so the
/// summed estimate is at most tol unless roundoff dominates.
QuadResult integrate(const RealFn& f, double lo, double hi, double tol,
                     std::size_t max_evaluations = kDefaultEvaluationBudget);

/// integrate() run separately on each piece of [lo, hi] cut at `breaks`
/// (points outside the open interval are ignored), tolerance split by width.
QuadResult integrate_split(const RealFn& f, double lo, double hi, const std::vector<double>& breaks,
                           double tol, std::size_t max_evaluations = kDefaultEvaluationBudget);

/// Raw integral of f(t)/t^2 over [x, y]; callers apply any ab/(b-a) prefactor.
/// `breaks` as in integrate_split.
QuadResult weighted_integral(const RealFn& f, double x, double y, double tol,
                             const std::vector<double>& breaks = {});
QuadResult weighted_integral(const RealFn& f, const HInterval& I, double tol,
                             const std::vector<double>& breaks = {});

/// Integral of f(t)/t^2 from r(y) to r(x). Equals the integral of
/// f(r(t))/t^2 from x to y.
QuadResult reflected_weighted_integral(const RealFn& f, const HInterval& I, double x, double y,
                                       double tol, const std::vector<double>& breaks = {});

/// Inner average G(x) = abx/(2ab-(a+b)x) * integral_x^{r(x)} f(t)/t^2 dt,
/// continued by f(2ab/(a+b)) within 1e-8 (b-a) of the midpoint.
struct InnerAverage {
  double value;
  double abs_error;
};
/// `breaks` are known kinks of f; both levels split there (the outer one also
/// at their reflections), which keeps piecewise smooth integrands cheap.
InnerAverage reflected_pair_average(const RealFn& f, const HInterval& I, double x, double tol,
                                    const std::vector<double>& breaks = {});

/// (1/(b-a)) * integral_a^b G(x) dx.
QuadResult refinement_double_integral(const RealFn& f, const HInterval& I, double tol,
                                      const std::vector<double>& breaks = {});

/// Central second difference with Richardson extrapolation over `levels`
/// halvings of the initial step.
double second_derivative(const RealFn& F, double x, double h0 = 0.05, int levels = 6);

}  // namespace hhv
