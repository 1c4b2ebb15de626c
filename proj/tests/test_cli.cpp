#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "hhv/cli.hpp"

using namespace hhv;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cfg(const RunConfig& cfg) {
  std::ostringstream o, e;
  const int c = run(cfg, o, e);
  return {c, o.str(), e.str()};
}

RunConfig base(const char* command, const char* fn = nullptr) {
  RunConfig c;
  c.command = command;
  if (fn) c.fn = fn;
  c.a = 1;
  c.b = 2;
  return c;
}

RunConfig verify(const char* chain, const char* fn) {
  RunConfig c = base("verify", fn);
  c.chain = chain;
  return c;
}

std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(HHVERIFY_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("check exit codes") {
  RunConfig c = base("check", "1/x");
  c.cls = "hc";
  Run r = run_cfg(c);
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"]["passed"] == true);

  c.fn = "-ln(x)";
  r = run_cfg(c);
  CHECK(r.code == kExitViolation);
  CHECK(json::parse(r.out)["verdict"].contains("witness"));

  c.fn = "ln(";
  r = run_cfg(c);
  CHECK(r.code == kExitError);
  CHECK(r.err.find("offset 3") != std::string::npos);

  c.fn = "1/x";
  c.cls = "nope";
  CHECK(run_cfg(c).code == kExitError);
  c.cls.reset();
  CHECK(run_cfg(c).code == kExitError);
  c.cls = "hhc";
  CHECK(run_cfg(c).code == kExitError);  // needs --h
  c.h = "x";
  CHECK(run_cfg(c).code == kExitPass);
}

TEST_CASE("verify examples") {
  Run r = run_cfg(verify("t1", "1/x"));
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["variant"] == "derived_corrected");
  for (const auto& t : j["reports"][0]["terms"]) CHECK(std::fabs(t["value"].get<double>() - 0.75) <= 1e-9);

  RunConfig t4 = verify("t4", "1/x");
  t4.g = "1/x";
  r = run_cfg(t4);
  CHECK(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j["reports"].size() == 2);
  for (const auto& rep : j["reports"]) {
    for (const auto& t : rep["terms"]) CHECK(std::fabs(t["value"].get<double>() - 0.5625) <= 1e-9);
  }

  RunConfig t3 = verify("t3", "1");
  t3.x = 1.2;
  t3.y = 1.7;
  t3.variant = "as_printed";
  r = run_cfg(t3);
  CHECK(r.code == kExitViolation);
  j = json::parse(r.out);
  CHECK(std::fabs(j["reports"][0]["terms"][1]["value"].get<double>() - 0.75) <= 1e-10);
  t3.variant = "derived_corrected";
  CHECK(run_cfg(t3).code == 0);

  RunConfig r2 = verify("r2", "-ln(x)");
  r2.x = 1.1;
  r = run_cfg(r2);
  CHECK(r.code == 0);  // auto direction picks concave
  CHECK(json::parse(r.out)["reports"].size() == 2);
  r2.direction = "convex";
  CHECK(run_cfg(r2).code == kExitViolation);
}

TEST_CASE("verify argument validation") {
  CHECK(run_cfg(verify("t4", "1/x")).code == kExitError);
  CHECK(run_cfg(verify("t5", "1/x")).code == kExitError);
  RunConfig c1 = verify("c1", "1/x");
  c1.h = "x";
  CHECK(run_cfg(c1).code == kExitError);  // needs --w
  c1.w = "1";
  CHECK(run_cfg(c1).code == 0);
  c1.w = "x - 1.5";
  CHECK(run_cfg(c1).code == kExitError);
  CHECK(run_cfg(verify("t9", "1/x")).code == kExitError);
  RunConfig bad = verify("t1", "1/x");
  bad.variant = "printed";
  CHECK(run_cfg(bad).code == kExitError);
  bad = verify("t1", "1/x");
  bad.format = "xml";
  CHECK(run_cfg(bad).code == kExitError);
  bad = verify("t1", "1/x");
  bad.b = 1;
  CHECK(run_cfg(bad).code == kExitError);
  bad = verify("t1", "1/x");
  bad.a.reset();
  CHECK(run_cfg(bad).code == kExitError);
  bad = verify("t3", "1/x");
  bad.x = 1.5;
  bad.y = 1.5;
  CHECK(run_cfg(bad).code == kExitError);
  bad = verify("t1", "ln(x - 1.5)");
  CHECK(run_cfg(bad).code == kExitError);
  RunConfig none;
  none.command = "frobnicate";
  CHECK(run_cfg(none).code == kExitError);
}

TEST_CASE("determinism and formats") {
  RunConfig c = verify("r4", "x^2");
  c.h = "x^0.5";
  c.x = 1.3;
  const Run a = run_cfg(c), b = run_cfg(c);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);

  c.format = "csv";
  const Run csv = run_cfg(c);
  CHECK(csv.out.rfind("chain,variant,direction,passed,index,label,value,abs_error,slack_to_next", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 1 + 3 + 3);

  const auto path = std::filesystem::temp_directory_path() / "hhv_cli_test.json";
  std::filesystem::remove(path);
  RunConfig f = verify("t1", "1/x");
  f.out = path.string();
  const Run r = run_cfg(f);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run_cfg(verify("t1", "1/x")).out);
  std::filesystem::remove(path);
}

TEST_CASE("search") {
  RunConfig s;
  s.command = "search";
  s.a = 1;
  s.b = 2;
  s.seed = 7;
  const Run r = run_cfg(s);
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["harmonic"]["passed"] == false);
  CHECK(j["harmonic"]["worst_margin"].get<double>() > 1e-3);
  CHECK(j["symmetrized"]["passed"] == true);
  CHECK(j["symmetrized"]["worst_margin"].get<double>() <= 1e-12);
  CHECK(run_cfg(s).out == r.out);

  s.a = -2;
  s.b = -1;
  CHECK(run_cfg(s).code == 0);
  s.a = 1;
  s.b = 1;
  CHECK(run_cfg(s).code == kExitError);
  // c = 0 is harmonic-affine, so it is no witness
  s.b = 2;
  s.c = 0.0;
  CHECK(run_cfg(s).code == kExitViolation);
}

TEST_CASE("sweep and corpus") {
  RunConfig s;
  s.command = "sweep";
  s.grid = 16;
  const Run r = run_cfg(s);
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["summary"]["derived_failures"] == 0);
  CHECK(j["summary"]["in_hypothesis"].get<int>() > 100);
  CHECK(j["errors"].empty());

  s.variant = "as_printed";
  const json p = json::parse(run_cfg(s).out);
  for (const char* id : {"t3", "r2-pair", "t6", "t4-upper"}) {
    CHECK_MESSAGE(p["summary"]["printed_violations"].value(id, 0) > 0, id);
  }

  RunConfig c;
  c.command = "corpus";
  const Run cr = run_cfg(c);
  CHECK(cr.code == 0);
  const auto path = std::filesystem::temp_directory_path() / "hhv_corpus_test.json";
  std::ofstream(path) << cr.out;
  c.corpus = path.string();
  const Run again = run_cfg(c);
  CHECK(again.code == 0);
  CHECK(again.out == cr.out);
  s.variant = "derived_corrected";
  s.corpus = path.string();
  CHECK(run_cfg(s).code == 0);
  std::ofstream(path) << "{\"schema\": 1, \"entries\": [{\"name\": \"bad\", \"source\": \"-ln(x)\", "
                         "\"interval\": [1, 2], \"classes\": {\"harmonic_convex\": true}}]}";
  CHECK(run_cfg(c).code == kExitError);
  std::filesystem::remove(path);
}

TEST_CASE("front end binary") {
  const auto [code, out] = shell("check --fn 1/x --a 1 --b 2 --class hc");
  CHECK(code == 0);
  RunConfig c = base("check", "1/x");
  c.cls = "hc";
  CHECK(out == run_cfg(c).out);
  CHECK(shell("check --fn 1/x --a 1 --b 2 --class hc").second == out);
  CHECK(shell("--help").first == 0);
  CHECK(shell("verify --bogus").first == 2);
  CHECK(shell("").first == 2);
  CHECK(shell("verify --chain t1 --fn 1/x --a one --b 2").first == 2);
}
