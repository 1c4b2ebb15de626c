#include "hhv/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace hhv {

namespace {

using json = nlohmann::json;

constexpr ConvexityClass kHarmonicTags[] = {
    ConvexityClass::harmonic_convex,
    ConvexityClass::harmonic_concave,
    ConvexityClass::symmetrized_harmonic_convex,
    ConvexityClass::symmetrized_harmonic_concave,
};

std::map<ConvexityClass, bool> classes(bool hc, bool hcc, bool shc, bool shcc) {
  return {{ConvexityClass::harmonic_convex, hc},
          {ConvexityClass::harmonic_concave, hcc},
          {ConvexityClass::symmetrized_harmonic_convex, shc},
          {ConvexityClass::symmetrized_harmonic_concave, shcc}};
}

CorpusEntry entry(std::string name, const std::string& text, double a, double b,
                  std::map<ConvexityClass, bool> cls, bool nonneg,
                  std::map<std::string, double> closed = {}) {
  return CorpusEntry{std::move(name), FunctionSpec::parse(text), HInterval(a, b),
                     std::move(cls), nonneg, std::move(closed), std::nullopt};
}

std::vector<CorpusEntry> build_corpus() {
  const double ln2 = std::numbers::ln2;
  const double e = std::numbers::e;
  std::vector<CorpusEntry> v;
  v.push_back(entry("const 1@[1,2]", "1", 1, 2, classes(true, true, true, true), true,
                    {{"weighted_integral", 0.5}, {"t1_middle", 1.0}}));
  v.push_back(entry("const 2.5@[1,2]", "2.5", 1, 2, classes(true, true, true, true), true,
                    {{"weighted_integral", 1.25}}));
  v.push_back(entry("1/t@[1,2]", "1/x", 1, 2, classes(true, true, true, true), true,
                    {{"weighted_integral", 0.375}, {"t1_middle", 0.75}}));
  v.push_back(entry("3/t+2@[1,2]", "3/x + 2", 1, 2, classes(true, true, true, true), true,
                    {{"weighted_integral", 3 * 0.375 + 1.0}}));
  v.push_back(entry("t@[1,2]", "x", 1, 2, classes(true, false, true, false), true,
                    {{"weighted_integral", ln2}, {"t1_middle", 2 * ln2}}));
  v.push_back(entry("t^2@[1,2]", "x^2", 1, 2, classes(true, false, true, false), true,
                    {{"weighted_integral", 1.0}}));
  CorpusEntry neg_ln = entry("-ln@[1,2]", "-ln(x)", 1, 2, classes(false, true, false, true),
                             false, {{"weighted_integral", 0.5 * (ln2 - 1.0)}});
  neg_ln.known_witness = Triple{1.0, 2.0, 0.5};
  v.push_back(std::move(neg_ln));
  CorpusEntry neg_ln_e =
      entry("-ln@[e,2e]", "-ln(x)", e, 2 * e, classes(false, true, false, true), false);
  neg_ln_e.known_witness = Triple{e, 2 * e, 0.5};
  v.push_back(std::move(neg_ln_e));
  v.push_back(entry("exp@[1,2]", "exp(x)", 1, 2, classes(true, false, true, false), true));
  for (double c : {0.0, 1.0, 10.0}) {
    const HInterval I(1, 2);
    const bool affine = c == 0.0;
    v.push_back(entry("inclusion c=" + format_double(c) + "@[1,2]", inclusion_family_text(I, c),
                      1, 2, classes(affine, affine, true, true), affine,
                      {{"sym_constant", 0.75}}));
  }
  v.push_back(entry("1/t@[-2,-1]", "1/x", -2, -1, classes(true, true, true, true), false,
                    {{"weighted_integral", -0.375}}));
  return v;
}

}  // namespace

void verify_entry(const CorpusEntry& e, const SampleGrid& grid) {
  const RealFn f = e.spec.callable();
  for (const auto& [cls, declared] : e.declared_classes) {
    const ConvexityVerdict v = check_class(cls, f, e.interval, grid);
    if (v.passed != declared) {
      throw CorpusError("corpus entry '" + e.name + "' declares " + std::string(to_string(cls)) +
                        " = " + (declared ? "true" : "false") + " but the checker found " +
                        "worst margin " + format_double(v.worst_margin));
    }
  }
  if (e.nonnegative) {
    for (int k = 0; k <= 256; ++k) {
      const double t = e.interval.a() + e.interval.width() * k / 256.0;
      if (f(t) < 0.0) {
        throw CorpusError("corpus entry '" + e.name + "' declared nonnegative but f(" +
                          format_double(t) + ") < 0");
      }
    }
  }
  if (e.known_witness) {
    if (!(harmonic_margin(f, *e.known_witness) > 0.0)) {
      throw CorpusError("corpus entry '" + e.name + "': recorded witness does not violate");
    }
  }
}

const std::vector<CorpusEntry>& builtin_functions() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> v = build_corpus();
    for (const auto& e : v) verify_entry(e);
    return v;
  }();
  return corpus;
}

const std::vector<HFunction>& builtin_h() {
  static const std::vector<HFunction> hs = {
      HFunction::parse("x", "t"),
      HFunction::parse("x^2", "t^2"),
      HFunction::parse("x^0.5", "sqrt(t)"),
      HFunction::parse("1", "1"),
  };
  return hs;
}

std::string corpus_to_json(const std::vector<CorpusEntry>& entries) {
  json doc;
  doc["schema"] = 1;
  doc["entries"] = json::array();
  for (const auto& e : entries) {
    json j;
    j["name"] = e.name;
    j["source"] = e.spec.source();
    j["interval"] = {e.interval.a(), e.interval.b()};
    json cls = json::object();
    for (const auto& [c, v] : e.declared_classes) cls[std::string(to_string(c))] = v;
    j["classes"] = cls;
    j["nonnegative"] = e.nonnegative;
    j["closed_forms"] = e.closed_forms;
    if (e.known_witness) {
      j["witness"] = {{"x", e.known_witness->x},
                      {"y", e.known_witness->y},
                      {"alpha", e.known_witness->alpha}};
    }
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2);
}

std::vector<CorpusEntry> corpus_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw CorpusError(std::string("corpus JSON: ") + ex.what());
  }
  if (doc.value("schema", 0) != 1) throw CorpusError("corpus JSON: unsupported schema");
  std::vector<CorpusEntry> out;
  try {
    for (const auto& j : doc.at("entries")) {
      std::map<ConvexityClass, bool> cls;
      const json classes = j.value("classes", json::object());
      for (const auto& [k, v] : classes.items()) {
        auto c = parse_class(k);
        if (!c) throw CorpusError("corpus JSON: unknown class '" + k + "'");
        cls[*c] = v.get<bool>();
      }
      const auto& iv = j.at("interval");
      CorpusEntry e{j.at("name").get<std::string>(),
                    FunctionSpec::parse(j.at("source").get<std::string>()),
                    HInterval(iv.at(0).get<double>(), iv.at(1).get<double>()),
                    std::move(cls),
                    j.value("nonnegative", false),
                    j.value("closed_forms", std::map<std::string, double>{}),
                    std::nullopt};
      if (j.contains("witness")) {
        const auto& w = j["witness"];
        e.known_witness =
            Triple{w.at("x").get<double>(), w.at("y").get<double>(), w.at("alpha").get<double>()};
      }
      verify_entry(e);
      out.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw CorpusError(std::string("corpus JSON: ") + ex.what());
  }
  return out;
}

RandomHarmonicConvex::RandomHarmonicConvex(const HInterval& I, std::mt19937_64& rng,
                                           bool nonnegative)
    : interval_(I),
      ulo_(std::min(1.0 / I.a(), 1.0 / I.b())),
      uhi_(std::max(1.0 / I.a(), 1.0 / I.b())) {
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  const int kinks = 1 + static_cast<int>(rng() % 5);
  base_ = 4.0 * unit() - 2.0;
  slope_ = 8.0 * unit() - 4.0;
  for (int k = 0; k < kinks; ++k) {
    kinks_.emplace_back(ulo_ + (uhi_ - ulo_) * unit(), 0.1 + 6.0 * unit());
  }
  std::sort(kinks_.begin(), kinks_.end());
  if (nonnegative) {
    const double m = min_value();
    if (m < 0.0) base_ += -m + unit();
  }
}

double RandomHarmonicConvex::reciprocal(double u) const {
  double v = base_ + slope_ * (u - ulo_);
  for (const auto& [uk, dk] : kinks_) v += dk * std::max(0.0, u - uk);
  return v;
}

double RandomHarmonicConvex::operator()(double t) const { return reciprocal(1.0 / t); }

double RandomHarmonicConvex::min_value() const {
  double m = std::min(reciprocal(ulo_), reciprocal(uhi_));
  for (const auto& [uk, dk] : kinks_) m = std::min(m, reciprocal(uk));
  return m;
}

std::vector<double> RandomHarmonicConvex::breakpoints() const {
  std::vector<double> t;
  for (const auto& [uk, dk] : kinks_) t.push_back(1.0 / uk);
  return t;
}

std::string RandomHarmonicConvex::text() const {
  auto lit = [](double v) { return v < 0.0 ? "(" + format_double(v) + ")" : format_double(v); };
  std::string s = lit(base_) + " + " + lit(slope_) + "*(1/x - " + lit(ulo_) + ")";
  for (const auto& [uk, dk] : kinks_) {
    s += " + " + lit(dk) + "*max(0, 1/x - " + lit(uk) + ")";
  }
  return s;
}

}  // namespace hhv
