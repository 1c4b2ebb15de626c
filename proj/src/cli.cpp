#include "hhv/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hhv/convexity.hpp"
#include "hhv/corpus.hpp"
#include "hhv/fnspec.hpp"
#include "hhv/hfunction.hpp"
#include "hhv/ineq.hpp"
#include "hhv/quad.hpp"
#include "hhv/report.hpp"
#include "hhv/sweep.hpp"

namespace hhv {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class T>
const T& require(const std::optional<T>& v, const char* flag, const std::string& why) {
  if (!v) throw UsageError(std::string("missing ") + flag + " (" + why + ")");
  return *v;
}

json header(const std::string& command) { return {{"schema", kReportSchema}, {"command", command}}; }

void emit(const RunConfig& cfg, std::string text, std::ostream& out) {
  if (text.empty() || text.back() != '\n') text += '\n';
  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + *cfg.out + "'");
    f << text;
    if (!f) throw UsageError("failed writing '" + *cfg.out + "'");
  } else {
    out << text;
  }
}

void require_json_format(const RunConfig& cfg) {
  if (cfg.format != "json") throw UsageError("--format " + cfg.format + " is not supported by " + cfg.command);
}

SampleGrid make_grid(const RunConfig& cfg) {
  if (cfg.grid < 2) throw UsageError("--grid must be at least 2");
  SampleGrid g;
  g.abscissae = cfg.grid;
  g.seed = cfg.seed;
  return g;
}

void validate_common(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  if (cfg.tol && !(*cfg.tol >= 0.0 && std::isfinite(*cfg.tol))) throw UsageError("--tol must be >= 0");
  if (!(cfg.quad_tol > 0.0 && std::isfinite(cfg.quad_tol))) throw UsageError("--quad-tol must be > 0");
  if (!parse_variant(cfg.variant)) throw UsageError("--variant must be as_printed or derived_corrected");
  if (cfg.direction != "auto" && cfg.direction != "convex" && cfg.direction != "concave") {
    throw UsageError("--direction must be auto, convex or concave");
  }
  if (cfg.random < 0) throw UsageError("--random must be >= 0");
}

HInterval make_interval(const RunConfig& cfg) {
  const double a = require(cfg.a, "--a", "interval"), b = require(cfg.b, "--b", "interval");
  try {
    return HInterval(a, b);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(std::string("invalid interval: ") + ex.what());
  }
}

template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << '\n';
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
  } catch (const DomainError& ex) {
    err << "domain error: " << ex.what() << '\n';
  } catch (const QuadratureError& ex) {
    err << "quadrature error: " << ex.what() << '\n';
  } catch (const CorpusError& ex) {
    err << "corpus error: " << ex.what() << '\n';
  } catch (const std::invalid_argument& ex) {
    err << "invalid argument: " << ex.what() << '\n';
  }
  return kExitError;
}

// Hypothesis verdicts for verify, computed on demand.
struct Hyp {
  const RealFn& f;
  const HInterval& I;
  const SampleGrid& grid;

  bool cls(ConvexityClass c, const HFunction* h = nullptr) const {
    return check_class(c, f, I, grid, kDefaultMarginTol, h).passed;
  }
  bool sym(Direction d, const HFunction* h = nullptr) const {
    return check_symmetrized(f, I, grid, kDefaultMarginTol, h, d).passed;
  }
};

bool sampled_nonnegative(const RealFn& f, double lo, double hi) {
  for (int k = 0; k <= 256; ++k) {
    if (f(lo + (hi - lo) * k / 256.0) < 0.0) return false;
  }
  return true;
}

// Chooses the direction (auto: the side whose hypotheses hold) and returns
// the hypotheses of that side.
Direction choose(const std::string& mode, const std::vector<Hypothesis>& convex_side,
                 const std::vector<Hypothesis>& concave_side, std::vector<Hypothesis>& hyps) {
  auto all = [](const std::vector<Hypothesis>& v) {
    for (const auto& h : v)
      if (!h.holds) return false;
    return true;
  };
  Direction d = Direction::convex;
  if (mode == "concave" || (mode == "auto" && !all(convex_side) && all(concave_side))) {
    d = Direction::concave;
  }
  hyps = d == Direction::convex ? convex_side : concave_side;
  return d;
}

const std::set<std::string> kChains = {"hh", "t1", "t2", "t3", "t4", "t5", "t6",
                                       "c1", "r2", "r3", "r4"};

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_common(cfg);
    require_json_format(cfg);
    const std::string& text = require(cfg.fn, "--fn", "function to check");
    const std::string& cname = require(cfg.cls, "--class", "class to check");
    const auto c = parse_class(cname);
    if (!c) throw UsageError("unknown class '" + cname + "'");
    const HInterval I = make_interval(cfg);
    const SampleGrid grid = make_grid(cfg);
    const FunctionSpec f = FunctionSpec::parse(text);
    std::optional<HFunction> h;
    if (needs_h(*c)) h = HFunction::parse(require(cfg.h, "--h", "class needs an h function"));
    const ConvexityVerdict v =
        check_class(*c, f.callable(), I, grid, cfg.tol.value_or(kDefaultMarginTol), h ? &*h : nullptr);
    json doc = header("check");
    doc["function"] = f.source();
    doc["interval"] = {I.a(), I.b()};
    if (h) doc["h"] = h->spec().source();
    doc["verdict"] = to_json(v);
    emit(cfg, doc.dump(2), out);
    return v.passed ? kExitPass : kExitViolation;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_common(cfg);
    const std::string& chain = require(cfg.chain, "--chain", "chain id");
    if (!kChains.count(chain)) throw UsageError("unknown chain '" + chain + "'");
    const std::string& text = require(cfg.fn, "--fn", "function");
    const FunctionSpec fs = FunctionSpec::parse(text);
    const RealFn f = fs.callable();
    const SampleGrid grid = make_grid(cfg);
    ChainOptions opt;
    opt.tol = cfg.tol.value_or(1e-8);
    opt.quad_tol = cfg.quad_tol;
    opt.variant = *parse_variant(cfg.variant);

    std::vector<ChainReport> reports;
    std::vector<Hypothesis> hyps;
    if (chain == "hh") {
      const double lo = require(cfg.a, "--a", "interval"), hi = require(cfg.b, "--b", "interval");
      if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw UsageError("invalid interval");
      opt.direction =
          choose(cfg.direction, {{"f convex", check_convex(f, lo, hi, grid).passed}},
                 {{"f concave", check_convex(f, lo, hi, grid, kDefaultMarginTol, Direction::concave).passed}},
                 hyps);
      reports.push_back(chain_hh_classic(f, lo, hi, opt));
    } else {
      const HInterval I = make_interval(cfg);
      const Hyp H{f, I, grid};
      const double x = cfg.x.value_or(I.a() + 0.2 * I.width());
      const double y = cfg.y.value_or(I.a() + 0.7 * I.width());
      auto sym_dir = [&] {
        return choose(cfg.direction, {{"f_sym harmonic convex", H.sym(Direction::convex)}},
                      {{"f_sym harmonic concave", H.sym(Direction::concave)}}, hyps);
      };
      std::optional<HFunction> h;
      const bool h_chain = chain == "t5" || chain == "t6" || chain == "c1" || chain == "r4";
      if (h_chain) {
        h = HFunction::parse(require(cfg.h, "--h", "chain " + chain + " needs an h function"));
        const bool nn = sampled_nonnegative(f, I.a(), I.b());
        opt.direction = choose(
            cfg.direction,
            {{"f nonnegative", nn}, {"f_sym harmonic h-convex", H.sym(Direction::convex, &*h)}},
            {{"f nonnegative", nn}, {"f_sym harmonic h-concave", H.sym(Direction::concave, &*h)}},
            hyps);
      }
      if (chain == "t1") {
        opt.direction = sym_dir();
        reports.push_back(chain_hh_iscan(f, I, opt));
      } else if (chain == "t2") {
        opt.direction = sym_dir();
        reports.push_back(bounds_pointwise(f, I, cfg.x.value_or(I.a() + 0.3 * I.width()), opt));
      } else if (chain == "t3") {
        opt.direction = sym_dir();
        reports.push_back(chain_subinterval(f, I, x, y, opt));
      } else if (chain == "r2") {
        opt.direction = sym_dir();
        if (cfg.x) reports.push_back(chain_reflected_pair(f, I, *cfg.x, opt));
        reports.push_back(chain_refinement(f, I, opt));
      } else if (chain == "r3") {
        opt.direction =
            choose(cfg.direction, {{"f harmonic convex", H.cls(ConvexityClass::harmonic_convex)}},
                   {{"f harmonic concave", H.cls(ConvexityClass::harmonic_concave)}}, hyps);
        reports.push_back(chain_harmonic_full(f, I, x, y, opt));
      } else if (chain == "t4") {
        const FunctionSpec gs = FunctionSpec::parse(require(cfg.g, "--g", "chain t4 needs g"));
        const RealFn g = gs.callable();
        const Hyp G{g, I, grid};
        const bool ghc = G.cls(ConvexityClass::harmonic_convex);
        const bool ghcc = G.cls(ConvexityClass::harmonic_concave);
        const bool fshc = H.sym(Direction::convex), fshcc = H.sym(Direction::concave);
        // Matching classes keep the direction, mixed classes reverse it.
        const std::vector<Hypothesis> same =
            (ghc && fshc) || !(ghcc && fshcc)
                ? std::vector<Hypothesis>{{"g harmonic convex", ghc}, {"f_sym harmonic convex", fshc}}
                : std::vector<Hypothesis>{{"g harmonic concave", ghcc}, {"f_sym harmonic concave", fshcc}};
        const std::vector<Hypothesis> mixed =
            (ghc && fshcc) || !(ghcc && fshc)
                ? std::vector<Hypothesis>{{"g harmonic convex", ghc}, {"f_sym harmonic concave", fshcc}}
                : std::vector<Hypothesis>{{"g harmonic concave", ghcc}, {"f_sym harmonic convex", fshc}};
        opt.direction = choose(cfg.direction, same, mixed, hyps);
        auto [lo, up] = product_inequalities(f, g, I, opt);
        lo.functions["g"] = up.functions["g"] = gs.source();
        reports.push_back(std::move(lo));
        reports.push_back(std::move(up));
      } else if (chain == "t5") {
        reports.push_back(chain_h_subinterval(f, *h, I, x, y, opt));
      } else if (chain == "t6") {
        reports.push_back(bounds_h_pointwise(f, *h, I, cfg.x.value_or(I.a() + 0.3 * I.width()), opt));
      } else if (chain == "c1") {
        const FunctionSpec ws = FunctionSpec::parse(require(cfg.w, "--w", "chain c1 needs a weight"));
        ChainReport r = weighted_bounds(f, *h, ws.callable(), I, opt);
        r.functions["w"] = ws.source();
        reports.push_back(std::move(r));
      } else if (chain == "r4") {
        if (cfg.x) reports.push_back(chain_h_reflected_pair(f, *h, I, *cfg.x, opt));
        reports.push_back(chain_h_refinement(f, *h, I, opt));
      }
    }

    bool all = true;
    for (auto& r : reports) {
      r.functions["f"] = fs.source();
      r.hypotheses = hyps;
      all = all && r.passed;
    }
    if (cfg.format == "csv") {
      emit(cfg, reports_to_csv(reports), out);
    } else {
      json doc = header("verify");
      doc["chain"] = chain;
      doc["variant"] = cfg.variant;
      doc["reports"] = json::array();
      for (const auto& r : reports) doc["reports"].push_back(to_json(r));
      emit(cfg, doc.dump(2), out);
    }
    return all ? kExitPass : kExitViolation;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_common(cfg);
    std::vector<CorpusEntry> loaded;
    if (cfg.corpus) {
      std::ifstream in(*cfg.corpus, std::ios::binary);
      if (!in) throw UsageError("cannot read corpus file '" + *cfg.corpus + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      loaded = corpus_from_json(ss.str());
    }
    const std::vector<CorpusEntry>& corpus = cfg.corpus ? loaded : builtin_functions();

    SweepConfig sc;
    sc.grid = make_grid(cfg);
    sc.tol = cfg.tol.value_or(1e-8);
    sc.quad_tol = cfg.quad_tol;
    sc.include_printed = *parse_variant(cfg.variant) == Variant::as_printed;
    sc.random_functions = cfg.random;
    sc.seed = cfg.seed;
    sc.threads = cfg.threads;
    const SweepResult res = run_sweep(corpus, sc);
    const SweepSummary& s = res.summary;

    if (cfg.format == "csv") {
      std::vector<ChainReport> reps;
      std::vector<std::string> names;
      for (const auto& it : res.items) {
        reps.push_back(it.report);
        names.push_back(it.entry);
      }
      emit(cfg, reports_to_csv(reps, &names), out);
    } else {
      json doc = header("sweep");
      json printed = json::object();
      for (const auto& [k, v] : s.printed_violations) printed[k] = v;
      doc["summary"] = {{"reports", s.reports},
                        {"in_hypothesis", s.in_hypothesis},
                        {"derived_failures", s.derived_failures},
                        {"out_of_hypothesis_failures", s.out_of_hypothesis_failures},
                        {"printed_violations", printed},
                        {"errors", res.errors.size()}};
      doc["errors"] = res.errors;
      doc["items"] = json::array();
      for (const auto& it : res.items) {
        doc["items"].push_back(
            {{"entry", it.entry}, {"in_hypothesis", it.in_hypothesis}, {"report", to_json(it.report)}});
      }
      emit(cfg, doc.dump(2), out);
    }
    err << "sweep: " << s.reports << " reports, " << s.in_hypothesis
        << " in-hypothesis derived, " << s.derived_failures << " derived failures, "
        << res.errors.size() << " errors\n";
    for (const auto& [k, v] : s.printed_violations) {
      err << "  as_printed violations in " << k << ": " << v << '\n';
    }
    for (const auto& e : res.errors) err << "  error: " << e << '\n';
    if (s.derived_failures > 0) return kExitViolation;
    return res.errors.empty() ? kExitPass : kExitError;
  });
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_common(cfg);
    require_json_format(cfg);
    const HInterval I = make_interval(cfg);
    const double tol = cfg.tol.value_or(kDefaultMarginTol);
    SampleGrid grid = make_grid(cfg);
    std::optional<InclusionWitness> w;
    if (cfg.c) {
      // Probe a single family member.
      const FunctionSpec f = FunctionSpec::parse(inclusion_family_text(I, *cfg.c));
      const auto hc = check_harmonic_convex(f.callable(), I, grid, tol);
      const auto sym = check_symmetrized(f.callable(), I, grid, tol);
      if (!hc.passed && sym.passed) w = InclusionWitness{*cfg.c, f, hc, sym};
    } else {
      w = find_strict_inclusion_witness(I, cfg.seed, tol);
    }
    json doc = header("search");
    doc["interval"] = {I.a(), I.b()};
    doc["seed"] = cfg.seed;
    doc["found"] = w.has_value();
    if (w) {
      doc["c"] = w->c;
      doc["function"] = w->function.source();
      doc["harmonic"] = to_json(w->harmonic);
      doc["symmetrized"] = to_json(w->symmetrized);
    } else {
      doc["message"] = "none found";
    }
    emit(cfg, doc.dump(2), out);
    return w ? kExitPass : kExitViolation;
  });
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_common(cfg);
    require_json_format(cfg);
    if (cfg.corpus) {
      std::ifstream in(*cfg.corpus, std::ios::binary);
      if (!in) throw UsageError("cannot read corpus file '" + *cfg.corpus + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      emit(cfg, corpus_to_json(corpus_from_json(ss.str())), out);
    } else {
      emit(cfg, corpus_to_json(builtin_functions()), out);
    }
    return kExitPass;
  });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "check") return cmd_check(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
  if (cfg.command == "search") return cmd_search(cfg, out, err);
  if (cfg.command == "corpus") return cmd_corpus(cfg, out, err);
  err << "usage error: unknown command '" << cfg.command << "'\n";
  return kExitError;
}

}  // namespace hhv
