// hhverify: harmonic symmetrization checks and inequality chain verification.

#include <iostream>

#include <CLI11.hpp>

#include "hhv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Harmonic symmetrization toolkit: convexity checks and inequality chains"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  hhv::RunConfig cfg;

  auto common = [&cfg](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--tol", cfg.tol, "absolute tolerance on margins / slacks");
    sub->add_option("--quad-tol", cfg.quad_tol, "absolute quadrature tolerance");
    sub->add_option("--grid", cfg.grid, "Chebyshev-Lobatto order of the sample grid");
    sub->add_option("--seed", cfg.seed, "seed for random triples and functions");
    sub->add_option("--out", cfg.out, "write the report to a file instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv");
  };
  auto interval = [&cfg](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "left endpoint");
    sub->add_option("--b", cfg.b, "right endpoint");
  };

  auto* check = app.add_subcommand("check", "test a function against a convexity class");
  check->add_option("--fn", cfg.fn, "f(x)");
  check->add_option("--h", cfg.h, "h(x) for the h-classes");
  check->add_option("--class", cfg.cls, "hc, hcc, shc, shcc, hhc, hhcc, shhc, shhcc, convex, concave");
  interval(check);
  common(check);

  auto* verify = app.add_subcommand("verify", "evaluate an inequality chain");
  verify->add_option("--chain", cfg.chain, "hh, t1..t6, c1, r2, r3, r4");
  verify->add_option("--fn", cfg.fn, "f(x)");
  verify->add_option("--g", cfg.g, "g(x) for t4");
  verify->add_option("--h", cfg.h, "h(x) for t5, t6, c1, r4");
  verify->add_option("--w", cfg.w, "weight w(x) for c1");
  verify->add_option("--x", cfg.x, "parameter x");
  verify->add_option("--y", cfg.y, "parameter y");
  verify->add_option("--variant", cfg.variant, "derived_corrected or as_printed");
  verify->add_option("--direction", cfg.direction, "auto, convex or concave");
  interval(verify);
  common(verify);

  auto* sweep = app.add_subcommand("sweep", "run every chain over the corpus");
  sweep->add_option("--variant", cfg.variant, "as_printed adds the printed forms");
  sweep->add_option("--corpus", cfg.corpus, "corpus JSON file (default: builtin)");
  sweep->add_option("--random", cfg.random, "number of random harmonic convex functions");
  sweep->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  common(sweep);

  auto* search = app.add_subcommand("search", "look for a symmetrized harmonic convex function that is not harmonic convex");
  search->add_option("--c", cfg.c, "probe one member of the family");
  interval(search);
  common(search);

  auto* corpus = app.add_subcommand("corpus", "export (or validate and re-export) the corpus");
  corpus->add_option("--corpus", cfg.corpus, "corpus JSON file to validate");
  common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hhv::kExitError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return hhv::run(cfg, std::cout, std::cerr);
}
