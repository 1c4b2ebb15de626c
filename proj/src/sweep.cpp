#include "hhv/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <thread>

namespace hhv {

namespace {

struct Facts {
  Facts(std::string n, std::string t, HInterval i, RealFn fn)
      : name(std::move(n)), text(std::move(t)), interval(i), f(std::move(fn)) {}

  std::string name;
  std::string text;
  HInterval interval;
  RealFn f;
  bool hc = false, hcc = false, shc = false, shcc = false;
  bool convex = false, concave = false;
  bool nonnegative = false;
  // Per builtin h: f_sym harmonic h-convex / h-concave.
  std::vector<bool> h_convex, h_concave;
  // Which builtin h entries to use at all.
  std::vector<std::size_t> h_indices;
  std::vector<double> breaks;
};

struct Context {
  Direction dir = Direction::convex;
  bool in = false;
  std::vector<Hypothesis> hyps;
};

Context pick(std::initializer_list<std::pair<const char*, bool>> convex_side,
             std::initializer_list<std::pair<const char*, bool>> concave_side) {
  Context c;
  auto all = [](auto list) {
    return std::all_of(list.begin(), list.end(), [](const auto& p) { return p.second; });
  };
  const bool cv = all(convex_side), cc = all(concave_side);
  c.in = cv || cc;
  c.dir = (!cv && cc) ? Direction::concave : Direction::convex;
  for (const auto& [s, v] : (c.dir == Direction::convex ? convex_side : concave_side)) {
    c.hyps.push_back({s, v});
  }
  return c;
}

Context sym_context(const Facts& e) {
  return pick({{"f_sym harmonic convex", e.shc}}, {{"f_sym harmonic concave", e.shcc}});
}

Context h_context(const Facts& e, std::size_t hi) {
  return pick({{"f nonnegative", e.nonnegative}, {"f_sym harmonic h-convex", e.h_convex[hi]}},
              {{"f nonnegative", e.nonnegative}, {"f_sym harmonic h-concave", e.h_concave[hi]}});
}

struct Task {
  std::string entry;
  std::string chain;
  std::function<std::vector<SweepItem>()> run;
};

std::vector<Variant> variants(const SweepConfig& cfg) {
  if (cfg.include_printed) return {Variant::derived_corrected, Variant::as_printed};
  return {Variant::derived_corrected};
}

class Builder {
public:
  explicit Builder(const SweepConfig& cfg) : cfg_(cfg) {}

  template <class Eval>
  void add(const Facts& e, std::string chain, const Context& ctx, Eval eval,
           const std::vector<double>& extra_breaks = {}) {
    const SweepConfig cfg = cfg_;
    const std::string entry = e.name, text = e.text;
    std::vector<double> breaks = e.breaks;
    breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
    tasks.push_back({entry, chain, [=] {
                       std::vector<SweepItem> out;
                       for (Variant v : variants(cfg)) {
                         ChainOptions opt;
                         opt.tol = cfg.tol;
                         opt.quad_tol = cfg.quad_tol;
                         opt.variant = v;
                         opt.direction = ctx.dir;
                         opt.breakpoints = breaks;
                         for (ChainReport r : eval(opt)) {
                           r.functions["f"] = text;
                           r.hypotheses = ctx.hyps;
                           out.push_back({entry, std::move(r), ctx.in});
                         }
                       }
                       return out;
                     }});
  }

  std::vector<Task> tasks;

private:
  SweepConfig cfg_;
};

using Reports = std::vector<ChainReport>;

void add_entry_tasks(Builder& B, const Facts& e, const std::vector<const Facts*>& partners,
                     bool corpus_params) {
  const HInterval I = e.interval;
  const RealFn f = e.f;
  auto at = [&](double p) { return I.a() + p * I.width(); };
  const Context sym = sym_context(e);

  if (corpus_params) {
    const Context hh = pick({{"f convex", e.convex}}, {{"f concave", e.concave}});
    B.add(e, "hh", hh, [=](const ChainOptions& o) {
      return Reports{chain_hh_classic(f, I.a(), I.b(), o)};
    });
  }
  B.add(e, "t1", sym, [=](const ChainOptions& o) { return Reports{chain_hh_iscan(f, I, o)}; });

  const std::vector<double> pts =
      corpus_params ? std::vector<double>{0.0, 0.3, 0.75, 1.0} : std::vector<double>{0.3};
  for (double p : pts) {
    const double x = at(p);
    B.add(e, "t2", sym,
          [=](const ChainOptions& o) { return Reports{bounds_pointwise(f, I, x, o)}; });
  }
  std::vector<std::pair<double, double>> spans = {{0.2, 0.7}};
  if (corpus_params) spans.push_back({0.9, 0.35});
  for (auto [p, q] : spans) {
    const double x = at(p), y = at(q);
    B.add(e, "t3", sym,
          [=](const ChainOptions& o) { return Reports{chain_subinterval(f, I, x, y, o)}; });
  }
  const std::vector<double> pair_pts =
      corpus_params ? std::vector<double>{0.1, 0.85} : std::vector<double>{0.1};
  for (double p : pair_pts) {
    const double x = at(p);
    B.add(e, "r2-pair", sym,
          [=](const ChainOptions& o) { return Reports{chain_reflected_pair(f, I, x, o)}; });
  }
  B.add(e, "r2-refine", sym,
        [=](const ChainOptions& o) { return Reports{chain_refinement(f, I, o)}; });
  {
    const Context full = pick({{"f harmonic convex", e.hc}}, {{"f harmonic concave", e.hcc}});
    const double x = at(0.2), y = at(0.7);
    B.add(e, "r3", full,
          [=](const ChainOptions& o) { return Reports{chain_harmonic_full(f, I, x, y, o)}; });
  }
  for (const Facts* g : partners) {
    // Both in convex classes or both in concave classes keeps the direction;
    // a mixed pairing reverses it.
    const bool same = (g->hc && e.shc) || (g->hcc && e.shcc);
    const bool mixed = (g->hc && e.shcc) || (g->hcc && e.shc);
    Context ctx;
    ctx.in = same || mixed;
    ctx.dir = (!same && mixed) ? Direction::concave : Direction::convex;
    if (ctx.dir == Direction::convex) {
      const bool gc = g->hc && e.shc;
      ctx.hyps = {{gc ? "g harmonic convex" : "g harmonic concave", gc ? g->hc : g->hcc},
                  {gc ? "f_sym harmonic convex" : "f_sym harmonic concave", gc ? e.shc : e.shcc}};
    } else {
      const bool gc = g->hc && e.shcc;
      ctx.hyps = {{gc ? "g harmonic convex" : "g harmonic concave", gc ? g->hc : g->hcc},
                  {gc ? "f_sym harmonic concave" : "f_sym harmonic convex", gc ? e.shcc : e.shc}};
    }
    const RealFn gf = g->f;
    const std::string gtext = g->text;
    B.add(e, "t4", ctx, [=](const ChainOptions& o) {
      auto [lo, up] = product_inequalities(f, gf, I, o);
      lo.functions["g"] = gtext;
      up.functions["g"] = gtext;
      return Reports{lo, up};
    }, g->breaks);
  }

  const auto& hs = builtin_h();
  for (std::size_t hi : e.h_indices) {
    const HFunction& h = hs[hi];
    const Context hc = h_context(e, hi);
    {
      const double x = at(0.2), y = at(0.7);
      B.add(e, "t5", hc, [=](const ChainOptions& o) {
        return Reports{chain_h_subinterval(f, h, I, x, y, o)};
      });
    }
    for (double p : corpus_params ? std::vector<double>{0.3, 0.75} : std::vector<double>{0.3}) {
      const double x = at(p);
      B.add(e, "t6", hc,
            [=](const ChainOptions& o) { return Reports{bounds_h_pointwise(f, h, I, x, o)}; });
    }
    const double a = I.a(), wd = I.width();
    std::vector<std::pair<std::string, RealFn>> weights = {{"1", [](double) { return 1.0; }}};
    if (corpus_params) {
      weights.push_back({"1 + (x - " + format_double(a) + ")/" + format_double(wd),
                         [a, wd](double t) { return 1.0 + (t - a) / wd; }});
    }
    for (const auto& [wtext, w] : weights) {
      B.add(e, "c1", hc, [=, wtext = wtext, w = w](const ChainOptions& o) {
        ChainReport r = weighted_bounds(f, h, w, I, o);
        r.functions["w"] = wtext;
        return Reports{r};
      });
    }
    for (double p : pair_pts) {
      const double x = at(p);
      B.add(e, "r4-pair", hc, [=](const ChainOptions& o) {
        return Reports{chain_h_reflected_pair(f, h, I, x, o)};
      });
    }
    B.add(e, "r4-refine", hc,
          [=](const ChainOptions& o) { return Reports{chain_h_refinement(f, h, I, o)}; });
  }
}

bool sampled_nonnegative(const RealFn& f, const HInterval& I) {
  for (int k = 0; k <= 256; ++k) {
    if (f(I.a() + I.width() * k / 256.0) < 0.0) return false;
  }
  return true;
}

Facts corpus_facts(const CorpusEntry& c, const SweepConfig& cfg) {
  Facts e(c.name, c.spec.source(), c.interval, c.spec.callable());
  e.hc = c.declares(ConvexityClass::harmonic_convex);
  e.hcc = c.declares(ConvexityClass::harmonic_concave);
  e.shc = c.declares(ConvexityClass::symmetrized_harmonic_convex);
  e.shcc = c.declares(ConvexityClass::symmetrized_harmonic_concave);
  const double lo = c.interval.a(), hi = c.interval.b();
  e.convex = check_convex(e.f, lo, hi, cfg.grid, cfg.margin_tol).passed;
  e.concave = check_convex(e.f, lo, hi, cfg.grid, cfg.margin_tol, Direction::concave).passed;
  e.nonnegative = sampled_nonnegative(e.f, c.interval);
  const auto& hs = builtin_h();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    e.h_indices.push_back(i);
    e.h_convex.push_back(
        check_symmetrized(e.f, c.interval, cfg.grid, cfg.margin_tol, &hs[i]).passed);
    e.h_concave.push_back(check_symmetrized(e.f, c.interval, cfg.grid, cfg.margin_tol, &hs[i],
                                            Direction::concave)
                              .passed);
  }
  return e;
}

}  // namespace

unsigned sweep_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HHVERIFY_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

SweepResult run_sweep(const std::vector<CorpusEntry>& corpus, const SweepConfig& cfg) {
  std::vector<Facts> facts;
  facts.reserve(corpus.size() + static_cast<std::size_t>(std::max(0, cfg.random_functions)));
  for (const auto& c : corpus) facts.push_back(corpus_facts(c, cfg));

  const std::size_t n_corpus = facts.size();
  if (cfg.random_functions > 0) {
    const HInterval I(1.0, 2.0);
    std::mt19937_64 rng(cfg.seed);
    const auto& hs = builtin_h();
    for (int i = 0; i < cfg.random_functions; ++i) {
      auto g = std::make_shared<RandomHarmonicConvex>(I, rng, i % 2 == 0);
      char name[32];
      std::snprintf(name, sizeof name, "random#%03d@[1,2]", i);
      Facts e(name, g->text(), I, [g](double t) { return (*g)(t); });
      // Harmonic convex by construction, hence also symmetrized harmonic convex.
      e.hc = e.shc = true;
      e.nonnegative = g->min_value() >= 0.0;
      e.breaks = g->breakpoints();
      if (e.nonnegative) {
        // h >= id on [0, 1] for these, so harmonic convexity implies h-convexity.
        for (std::size_t k = 0; k < hs.size(); ++k) {
          const std::string& nm = hs[k].name();
          if (nm == "t" || nm == "sqrt(t)" || nm == "1") e.h_indices.push_back(k);
        }
      }
      e.h_convex.assign(hs.size(), true);
      e.h_concave.assign(hs.size(), false);
      facts.push_back(std::move(e));
    }
  }

  Builder B(cfg);
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const Facts& e = facts[i];
    std::vector<const Facts*> partners;
    if (i < n_corpus) {
      for (std::size_t j = 0; j < n_corpus; ++j) {
        if (facts[j].interval.a() == e.interval.a() && facts[j].interval.b() == e.interval.b()) {
          partners.push_back(&facts[j]);
        }
      }
    } else {
      const std::size_t n_rand = facts.size() - n_corpus;
      partners.push_back(&facts[n_corpus + (i - n_corpus + 1) % n_rand]);
    }
    add_entry_tasks(B, e, partners, i < n_corpus);
  }

  std::vector<std::vector<SweepItem>> results(B.tasks.size());
  std::vector<std::optional<std::string>> failures(B.tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < B.tasks.size();) {
      try {
        results[k] = B.tasks[k].run();
      } catch (const std::exception& ex) {
        failures[k] = B.tasks[k].entry + ": " + B.tasks[k].chain + ": " + ex.what();
      }
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(sweep_threads(cfg.threads), std::max<std::size_t>(1, B.tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult out;
  for (std::size_t k = 0; k < results.size(); ++k) {
    for (auto& it : results[k]) out.items.push_back(std::move(it));
    if (failures[k]) out.errors.push_back(*failures[k]);
  }
  std::stable_sort(out.items.begin(), out.items.end(), [](const SweepItem& l, const SweepItem& r) {
    if (l.entry != r.entry) return l.entry < r.entry;
    return l.report.chain_id < r.report.chain_id;
  });

  SweepSummary& s = out.summary;
  s.reports = out.items.size();
  for (const auto& it : out.items) {
    const bool derived = it.report.variant == Variant::derived_corrected;
    if (it.in_hypothesis && derived) ++s.in_hypothesis;
    if (it.report.passed) continue;
    if (!derived) {
      if (it.in_hypothesis) ++s.printed_violations[it.report.chain_id];
    } else if (it.in_hypothesis) {
      ++s.derived_failures;
    } else {
      ++s.out_of_hypothesis_failures;
    }
  }
  return out;
}

}  // namespace hhv
