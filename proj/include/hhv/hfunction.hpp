#pragma once

#include <string>

#include "hhv/fnspec.hpp"
#include "hhv/quad.hpp"

namespace hhv {

/// Nonnegative weight function h on [0, 1] with h(1/2) > 0.
/// h(1/2) and the integral over [0, 1] are computed once at construction.
class HFunction {
public:
  explicit HFunction(FunctionSpec spec, std::string name = {});
  static HFunction parse(std::string_view text, std::string name = {});
  static HFunction identity();

  double operator()(double t) const { return spec_(t); }

  const FunctionSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return name_; }
  double h_half() const noexcept { return h_half_; }
  double h_int() const noexcept { return h_int_.value; }
  const QuadResult& h_int_result() const noexcept { return h_int_; }

  RealFn callable() const { return spec_.callable(); }

private:
  FunctionSpec spec_;
  std::string name_;
  double h_half_ = 0.0;
  QuadResult h_int_;
};

}  // namespace hhv
