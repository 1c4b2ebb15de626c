#include "hhv/report.hpp"

#include <sstream>

namespace hhv {

using nlohmann::json;

json to_json(const Triple& t) { return {{"x", t.x}, {"y", t.y}, {"alpha", t.alpha}}; }

json to_json(const ConvexityVerdict& v) {
  return {{"class", std::string(to_string(v.class_tested))},
          {"passed", v.passed},
          {"worst_margin", v.worst_margin},
          {"witness", to_json(v.witness)},
          {"samples_used", v.samples_used},
          {"tol", v.tol}};
}

json to_json(const ChainReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"label", t.label}, {"value", t.value}, {"abs_error", t.abs_error}});
  }
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  json hyps = json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"statement", h.statement}, {"holds", h.holds}});
  return {{"chain", r.chain_id},
          {"variant", std::string(to_string(r.variant))},
          {"direction", std::string(to_string(r.direction))},
          {"passed", r.passed},
          {"tol", r.tol},
          {"interval", {r.lo, r.hi}},
          {"params", r.params},
          {"functions", r.functions},
          {"terms", terms},
          {"slacks", r.slacks},
          {"extras", extras},
          {"hypotheses", hyps}};
}

namespace {
std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string reports_to_csv(const std::vector<ChainReport>& reports,
                           const std::vector<std::string>* entries) {
  std::ostringstream os;
  if (entries) os << "entry,";
  os << "chain,variant,direction,passed,index,label,value,abs_error,slack_to_next\n";
  for (std::size_t n = 0; n < reports.size(); ++n) {
    const ChainReport& r = reports[n];
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      const Term& t = r.terms[i];
      if (entries) os << csv_quote((*entries)[n]) << ',';
      os << r.chain_id << ',' << to_string(r.variant) << ',' << to_string(r.direction) << ','
         << (r.passed ? "true" : "false") << ',' << i << ',' << csv_quote(t.label) << ','
         << format_double(t.value) << ',' << format_double(t.abs_error) << ',';
      if (i < r.slacks.size()) os << format_double(r.slacks[i]);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace hhv
