#pragma once

// Inequality chains as ordered numeric terms with quadrature error bars.
//
// Chain ids:
//   hh   classical midpoint / mean / trapezoid chain
//   t1   f(2ab/(a+b)) <= ab/(b-a) int f/t^2 <= (f(a)+f(b))/2
//   t2   pointwise bounds f(2ab/(a+b)) <= f_sym(x) <= (f(a)+f(b))/2
//   t3   subinterval chain on [x, y] and its reflection
//   r2   reflected pair y = r(x), and the refinement double integral
//   r3   t3 with the harmonic midpoint value prepended
//   t4   product bounds for g harmonic convex, f symmetrized harmonic convex
//   t5   h-version of t3
//   t6   h-version of t2
//   c1   w-weighted integral of t6
//   r4   h-versions of the r2 chains
//
// Every evaluator has two variants. `derived_corrected` is the form forced
// by expanding the underlying convexity argument; `as_printed` reproduces a
// historically printed form that differs from it (see discrepancies()).
// For chains without a discrepancy the two variants coincide.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhv/convexity.hpp"
#include "hhv/fnspec.hpp"
#include "hhv/hfunction.hpp"
#include "hhv/hmean.hpp"

namespace hhv {

enum class Variant { as_printed, derived_corrected };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

struct Term {
  std::string label;
  double value = 0.0;
  double abs_error = 0.0;
};

struct Hypothesis {
  std::string statement;
  bool holds = false;
};

struct ChainReport {
  std::string chain_id;
  Variant variant = Variant::derived_corrected;
  Direction direction = Direction::convex;
  std::vector<Term> terms;
  /// slacks[i] = terms[i+1] - terms[i] (reversed for concave direction).
  std::vector<double> slacks;
  bool passed = false;
  double tol = 0.0;
  double lo = 0.0;  // interval the chain was evaluated on
  double hi = 0.0;
  std::map<std::string, double> params;
  std::map<std::string, std::string> functions;
  std::vector<std::pair<std::string, double>> extras;
  std::vector<Hypothesis> hypotheses;

  /// Recomputes slacks and passed from terms, direction and tol.
  void finalize();
  /// Largest |terms[i] - terms[j]|.
  double spread() const;
};

struct ChainOptions {
  double tol = 1e-8;        // absolute slack tolerance
  double quad_tol = 1e-11;  // absolute quadrature tolerance per integral
  Variant variant = Variant::derived_corrected;
  Direction direction = Direction::convex;
  /// Known kinks of the integrands (f, and g for t4). Every chain integral is
  /// split there and at the reflected points, so no kink can hide between nodes.
  std::vector<double> breakpoints;
};

ChainReport chain_hh_classic(const RealFn& f, double lo, double hi, const ChainOptions& opt = {});
ChainReport chain_hh_iscan(const RealFn& f, const HInterval& I, const ChainOptions& opt = {});
ChainReport bounds_pointwise(const RealFn& f, const HInterval& I, double x,
                             const ChainOptions& opt = {});
ChainReport chain_subinterval(const RealFn& f, const HInterval& I, double x, double y,
                              const ChainOptions& opt = {});
ChainReport chain_reflected_pair(const RealFn& f, const HInterval& I, double x,
                                 const ChainOptions& opt = {});
ChainReport chain_refinement(const RealFn& f, const HInterval& I, const ChainOptions& opt = {});
ChainReport chain_harmonic_full(const RealFn& f, const HInterval& I, double x, double y,
                                const ChainOptions& opt = {});

/// Lower (first) and upper (second) product reports. Direction concave
/// means exactly one of f, g is in the concave class, which reverses both.
std::pair<ChainReport, ChainReport> product_inequalities(const RealFn& f, const RealFn& g,
                                                         const HInterval& I,
                                                         const ChainOptions& opt = {});

ChainReport chain_h_subinterval(const RealFn& f, const HFunction& h, const HInterval& I, double x,
                                double y, const ChainOptions& opt = {});
ChainReport bounds_h_pointwise(const RealFn& f, const HFunction& h, const HInterval& I, double x,
                               const ChainOptions& opt = {});
ChainReport weighted_bounds(const RealFn& f, const HFunction& h, const RealFn& w,
                            const HInterval& I, const ChainOptions& opt = {});
ChainReport chain_h_reflected_pair(const RealFn& f, const HFunction& h, const HInterval& I,
                                   double x, const ChainOptions& opt = {});
ChainReport chain_h_refinement(const RealFn& f, const HFunction& h, const HInterval& I,
                               const ChainOptions& opt = {});

struct Discrepancy {
  std::string chain_id;
  std::string printed;
  std::string derived;
};

/// Known differences between printed chain statements and derived forms.
const std::vector<Discrepancy>& discrepancies();

}  // namespace hhv
