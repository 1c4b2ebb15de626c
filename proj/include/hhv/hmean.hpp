#pragma once

// Harmonic interval geometry: harmonic combinations, the reflection
//   r(t) = ab t / ((a+b) t - ab)
// which swaps a and b and fixes the harmonic midpoint 2ab/(a+b), and the
// symmetrical / anti-symmetrical parts of a function with respect to r.
//
// In reciprocal coordinates u = 1/t the reflection is u -> (1/a + 1/b) - u
// and a harmonic combination is a convex combination, which is why
// reflection commutes with hcomb.

#include "hhv/fnspec.hpp"

namespace hhv {

/// Closed interval [a, b] with a < b and ab > 0 (zero excluded).
class HInterval {
public:
  HInterval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  bool contains(double t) const noexcept { return t >= a_ && t <= b_; }

  /// 2ab / (a + b).
  double midpoint() const noexcept { return 2.0 * a_ * b_ / (a_ + b_); }
  double reflect(double t) const;

  /// Weights (lambda_b, lambda_a) with x = hcomb(a, b, lambda_b) and
  /// lambda_a = 1 - lambda_b, i.e. b(x-a)/(x(b-a)) and a(b-x)/(x(b-a)).
  std::pair<double, double> endpoint_weights(double x) const;

  friend bool operator==(const HInterval&, const HInterval&) = default;

private:
  double a_;
  double b_;
};

/// xy / (alpha x + (1 - alpha) y). alpha = 1 gives y, alpha = 0 gives x.
double hcomb(double x, double y, double alpha);

double reflect(const HInterval& I, double t);
double harmonic_midpoint(const HInterval& I);

enum class TransformKind { symmetric, antisymmetric };

/// t -> (f(t) +/- f(r(t))) / 2 on a fixed interval. Recomputed on each call.
class TransformedFunction {
public:
  TransformedFunction(RealFn base, HInterval interval, TransformKind kind);

  double operator()(double t) const;

  const HInterval& interval() const noexcept { return interval_; }
  TransformKind kind() const noexcept { return kind_; }
  const RealFn& base() const noexcept { return base_; }

private:
  RealFn base_;
  HInterval interval_;
  TransformKind kind_;
};

TransformedFunction sym_transform(RealFn f, const HInterval& I);
TransformedFunction antisym_transform(RealFn f, const HInterval& I);

}  // namespace hhv
