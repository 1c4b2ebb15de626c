#pragma once

// Sample-based certification and refutation of convexity classes.
//
// A verdict is "passed" when no sampled triple (x, y, alpha) violates the
// defining inequality by more than tol. That certifies nothing beyond the
// samples, so every verdict carries its sample count. A failed verdict
// carries the worst triple, which reproduces the margin exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhv/fnspec.hpp"
#include "hhv/hfunction.hpp"
#include "hhv/hmean.hpp"

namespace hhv {

enum class ConvexityClass {
  convex,
  concave,
  harmonic_convex,
  harmonic_concave,
  harmonic_h_convex,
  harmonic_h_concave,
  symmetrized_harmonic_convex,
  symmetrized_harmonic_concave,
  symmetrized_harmonic_h_convex,
  symmetrized_harmonic_h_concave,
};

enum class Direction { convex, concave };

std::string_view to_string(ConvexityClass c);
std::string_view to_string(Direction d);
/// Accepts the full names above and the short forms used on the command line
/// (convex, concave, hc, hcc, hhc, hhcc, shc, shcc, shhc, shhcc).
std::optional<ConvexityClass> parse_class(std::string_view s);
bool needs_h(ConvexityClass c);

struct Triple {
  double x = 0.0;
  double y = 0.0;
  double alpha = 0.0;
};

struct ConvexityVerdict {
  ConvexityClass class_tested = ConvexityClass::harmonic_convex;
  bool passed = true;
  double worst_margin = 0.0;
  Triple witness;
  std::size_t samples_used = 0;
  double tol = 0.0;
};

struct SampleGrid {
  /// Chebyshev-Lobatto order n: n + 1 abscissae including both endpoints.
  int abscissae = 64;
  std::vector<double> weights = default_weights();
  int random_triples = 512;
  std::uint64_t seed = 0;

  static std::vector<double> default_weights();
};

inline constexpr double kDefaultMarginTol = 1e-9;

/// Deterministic triples over [lo, hi]: all node pairs x_i < x_j times every
/// grid weight, then the seeded random spillover. `extra` nodes (e.g. the
/// harmonic midpoint) are merged into the abscissae.
std::vector<Triple> enumerate_triples(double lo, double hi, const SampleGrid& grid,
                                      const std::vector<double>& extra = {});

// Defining-inequality margins; positive means the inequality is violated.
double harmonic_margin(const RealFn& f, const Triple& t);
double harmonic_h_margin(const RealFn& f, const HFunction& h, const Triple& t);
double convex_margin(const RealFn& F, const Triple& t);

ConvexityVerdict check_harmonic_convex(const RealFn& f, const HInterval& I, const SampleGrid& grid,
                                       double tol = kDefaultMarginTol,
                                       Direction dir = Direction::convex);
ConvexityVerdict check_harmonic_h_convex(const RealFn& f, const HFunction& h, const HInterval& I,
                                         const SampleGrid& grid, double tol = kDefaultMarginTol,
                                         Direction dir = Direction::convex);
ConvexityVerdict check_symmetrized(const RealFn& f, const HInterval& I, const SampleGrid& grid,
                                   double tol = kDefaultMarginTol,
                                   const HFunction* h = nullptr,
                                   Direction dir = Direction::convex);
ConvexityVerdict check_convex(const RealFn& F, double lo, double hi, const SampleGrid& grid,
                              double tol = kDefaultMarginTol, Direction dir = Direction::convex);

/// Dispatch on a class tag. h is required for the h-classes.
ConvexityVerdict check_class(ConvexityClass c, const RealFn& f, const HInterval& I,
                             const SampleGrid& grid, double tol = kDefaultMarginTol,
                             const HFunction* h = nullptr);

/// Re-evaluates the defining inequality of `v.class_tested` at its witness.
double margin_at_witness(const ConvexityVerdict& v, const RealFn& f, const HInterval& I,
                         const HFunction* h = nullptr);

/// A member of f_c(t) = 1/t + c (t - r(t)) that is symmetrized harmonic
/// convex (its symmetrical part is the constant (a+b)/(2ab)) but not
/// harmonic convex.
struct InclusionWitness {
  double c = 0.0;
  FunctionSpec function;
  ConvexityVerdict harmonic;      // expected: failed
  ConvexityVerdict symmetrized;   // expected: passed
};

/// Expression text of f_c on I.
std::string inclusion_family_text(const HInterval& I, double c);

/// Walks c = 2^k, k = -20..20, and returns the first f_c whose harmonic
/// convexity margin exceeds max(tol, min_margin) while the symmetrized
/// check passes at tol.
std::optional<InclusionWitness> find_strict_inclusion_witness(const HInterval& I,
                                                              std::uint64_t seed,
                                                              double tol = kDefaultMarginTol,
                                                              double min_margin = 1e-3);

// f = -ln: midpoint test at (e, 2e, 1/2) and the pullback F(u) = f_sym(1/u).
namespace logexample {

struct MidpointViolation {
  double x, y;
  double chord;      // (f(x) + f(y)) / 2 = -1 - ln(2)/2
  double midpoint;   // f(2xy/(x+y)) = ln 3 - ln 4 - 1
  double gap;        // midpoint - chord > 0
};
MidpointViolation midpoint_violation();

/// F(u) = f_sym(1/u) evaluated through the transform.
double pullback(const HInterval& I, double u);
/// 1/2 ln(u (a+b-abu) / (ab)): closed form of `pullback`.
double pullback_closed_form(const HInterval& I, double u);
/// The simplification that drops ln(u): 1/2 ln((a+b-abu)/(ab)).
double pullback_dropped_term(const HInterval& I, double u);
/// -1/2 [1/u^2 + (ab)^2/(a+b-abu)^2] < 0.
double pullback_second_derivative(const HInterval& I, double u);
/// The positive curvature claim 1/2 (ab/(a+b-abu))^2.
double claimed_second_derivative(const HInterval& I, double u);

}  // namespace logexample

}  // namespace hhv
