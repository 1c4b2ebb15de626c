#pragma once

// Corpus-wide chain sweep. Every (entry, chain, parameter set) tuple is an
// independent task; tasks run on a small thread pool and the results are
// reassembled in a fixed order, so the output does not depend on timing.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hhv/convexity.hpp"
#include "hhv/corpus.hpp"
#include "hhv/ineq.hpp"

namespace hhv {

struct SweepConfig {
  SampleGrid grid;
  double tol = 1e-8;
  double quad_tol = 1e-11;
  double margin_tol = kDefaultMarginTol;
  bool include_printed = false;  // also evaluate as_printed variants
  int random_functions = 0;      // seeded random harmonic convex functions on [1, 2]
  std::uint64_t seed = 0;
  unsigned threads = 0;          // 0: hardware concurrency, capped by HHVERIFY_THREADS
};

struct SweepItem {
  std::string entry;
  ChainReport report;
  bool in_hypothesis = false;
};

struct SweepSummary {
  std::size_t reports = 0;
  std::size_t in_hypothesis = 0;
  std::size_t derived_failures = 0;      // derived_corrected, in hypothesis, failed
  std::size_t out_of_hypothesis_failures = 0;
  std::map<std::string, std::size_t> printed_violations;  // by chain id, in hypothesis
};

struct SweepResult {
  std::vector<SweepItem> items;
  std::vector<std::string> errors;  // "<entry>: <chain>: message"
  SweepSummary summary;
};

SweepResult run_sweep(const std::vector<CorpusEntry>& corpus, const SweepConfig& cfg);

/// Worker count: requested (or hardware) capped by HHVERIFY_THREADS when set.
unsigned sweep_threads(unsigned requested);

}  // namespace hhv
