#pragma once

// Curated test functions with declared class memberships. Declarations are
// re-verified by the convexity checker when the corpus is built or
// imported; a mismatch is an error, not a silently failing test.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hhv/convexity.hpp"
#include "hhv/fnspec.hpp"
#include "hhv/hfunction.hpp"
#include "hhv/hmean.hpp"

namespace hhv {

struct CorpusEntry {
  std::string name;
  FunctionSpec spec;
  HInterval interval;
  std::map<ConvexityClass, bool> declared_classes;
  bool nonnegative = false;
  std::map<std::string, double> closed_forms;
  std::optional<Triple> known_witness;

  bool declares(ConvexityClass c) const {
    auto it = declared_classes.find(c);
    return it != declared_classes.end() && it->second;
  }
};

class CorpusError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Built once, verified, then shared read-only.
const std::vector<CorpusEntry>& builtin_functions();
const std::vector<HFunction>& builtin_h();

/// Throws CorpusError when a declared membership or nonnegativity claim
/// disagrees with the checker on `grid`.
void verify_entry(const CorpusEntry& e, const SampleGrid& grid = {});

std::string corpus_to_json(const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> corpus_from_json(const std::string& text);

/// f(t) = G(1/t) with G convex piecewise linear on the reciprocal interval,
/// so f is harmonic convex by construction.
class RandomHarmonicConvex {
public:
  RandomHarmonicConvex(const HInterval& I, std::mt19937_64& rng, bool nonnegative);

  double operator()(double t) const;
  double reciprocal(double u) const;
  std::string text() const;
  const HInterval& interval() const noexcept { return interval_; }
  double min_value() const;
  /// Kink locations in t.
  std::vector<double> breakpoints() const;

private:
  HInterval interval_;
  double ulo_;
  double uhi_;
  double base_;
  double slope_;
  std::vector<std::pair<double, double>> kinks_;  // (u_k, slope increment > 0)
};

}  // namespace hhv
