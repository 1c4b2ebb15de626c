#pragma once

// Command implementations behind the hhverify front end. Each command takes
// a validated RunConfig, writes its report to `out` (or the --out file) and
// diagnostics to `err`, and returns the process exit code:
//   0 pass, 1 mathematical violation, 2 usage or evaluation error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hhv {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

struct RunConfig {
  std::string command;
  std::optional<std::string> fn, g, h, w;
  std::optional<double> a, b;
  std::optional<double> x, y, c;
  std::optional<double> tol;
  double quad_tol = 1e-11;
  int grid = 64;
  std::uint64_t seed = 0;
  std::string variant = "derived_corrected";
  std::string direction = "auto";  // auto | convex | concave
  std::optional<std::string> out;
  std::string format = "json";     // json | csv
  std::optional<std::string> cls;  // check
  std::optional<std::string> chain;  // verify
  std::optional<std::string> corpus;  // sweep: corpus JSON file instead of the builtin one
  int random = 0;                     // sweep: random harmonic convex functions
  unsigned threads = 0;
};

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.command.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hhv
