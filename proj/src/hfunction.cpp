#include "hhv/hfunction.hpp"

#include <cmath>

namespace hhv {

HFunction::HFunction(FunctionSpec spec, std::string name)
    : spec_(std::move(spec)), name_(name.empty() ? spec_.source() : std::move(name)) {
  h_half_ = spec_(0.5);
  if (!(h_half_ > 0.0)) {
    throw std::invalid_argument("h(1/2) must be positive for h = " + spec_.source());
  }
  for (int k = 1; k < 64; ++k) {
    const double t = k / 64.0;
    if (spec_(t) < 0.0) {
      throw std::invalid_argument("h must be nonnegative on (0,1); h(" + format_double(t) +
                                  ") < 0 for h = " + spec_.source());
    }
  }
  h_int_ = integrate(spec_.callable(), 0.0, 1.0, 1e-13);
}

HFunction HFunction::parse(std::string_view text, std::string name) {
  return HFunction(FunctionSpec::parse(text), std::move(name));
}

HFunction HFunction::identity() { return parse("x", "t"); }

}  // namespace hhv
