#include "hhv/hmean.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hhv {

namespace {
constexpr double kEndpointSlack = 1e-12;
}

HInterval::HInterval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("interval endpoints must be finite");
  }
  if (!(a < b)) {
    throw std::invalid_argument("interval requires a < b, got [" + format_double(a) + ", " +
                                format_double(b) + "]");
  }
  if (!(a * b > 0.0)) {
    throw std::invalid_argument("interval must not contain zero: [" + format_double(a) + ", " +
                                format_double(b) + "]");
  }
}

double HInterval::reflect(double t) const {
  const double slack = kEndpointSlack * (b_ - a_);
  if (!(t >= a_ - slack && t <= b_ + slack)) {
    throw DomainError("reflect: " + format_double(t) + " outside [" + format_double(a_) + ", " +
                      format_double(b_) + "]");
  }
  t = std::clamp(t, a_, b_);
  if (t == a_) return b_;
  if (t == b_) return a_;
  const double ab = a_ * b_;
  return std::clamp(ab * t / ((a_ + b_) * t - ab), a_, b_);
}

std::pair<double, double> HInterval::endpoint_weights(double x) const {
  const double lb = b_ * (x - a_) / (x * (b_ - a_));
  const double la = a_ * (b_ - x) / (x * (b_ - a_));
  return {lb, la};
}

double hcomb(double x, double y, double alpha) {
  if (x == 0.0 || y == 0.0) throw std::invalid_argument("hcomb: zero argument");
  if ((x > 0.0) != (y > 0.0)) throw std::invalid_argument("hcomb: arguments differ in sign");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("hcomb: weight outside [0,1]");
  if (alpha == 0.0) return x;
  if (alpha == 1.0) return y;
  const double v = x * y / (alpha * x + (1.0 - alpha) * y);
  return std::clamp(v, std::min(x, y), std::max(x, y));
}

double reflect(const HInterval& I, double t) { return I.reflect(t); }

double harmonic_midpoint(const HInterval& I) { return I.midpoint(); }

TransformedFunction::TransformedFunction(RealFn base, HInterval interval, TransformKind kind)
    : base_(std::move(base)), interval_(interval), kind_(kind) {}

double TransformedFunction::operator()(double t) const {
  const double rt = interval_.reflect(t);
  t = std::clamp(t, interval_.a(), interval_.b());
  const double ft = base_(t);
  const double frt = base_(rt);
  return kind_ == TransformKind::symmetric ? 0.5 * (ft + frt) : 0.5 * (ft - frt);
}

TransformedFunction sym_transform(RealFn f, const HInterval& I) {
  return TransformedFunction(std::move(f), I, TransformKind::symmetric);
}

TransformedFunction antisym_transform(RealFn f, const HInterval& I) {
  return TransformedFunction(std::move(f), I, TransformKind::antisymmetric);
}

}  // namespace hhv
