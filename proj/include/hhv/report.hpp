#pragma once

// JSON / CSV serialization of verdicts and chain reports (schema 1).

#include <string>
#include <vector>

#include <json.hpp>

#include "hhv/convexity.hpp"
#include "hhv/ineq.hpp"

namespace hhv {

inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const ConvexityVerdict& v);
nlohmann::json to_json(const ChainReport& r);
nlohmann::json to_json(const Triple& t);

/// One row per chain term: chain, variant, direction, passed, index, label,
/// value, abs_error, slack_to_next. Numbers use 17 significant digits.
/// With `entries` (parallel to `reports`) a leading entry column is added.
std::string reports_to_csv(const std::vector<ChainReport>& reports,
                           const std::vector<std::string>* entries = nullptr);

}  // namespace hhv
