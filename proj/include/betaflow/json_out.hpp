#pragma once

#include <string>

#include <json.hpp>

#include "betaflow/stat_tests.hpp"

namespace betaflow {

using ordered_json = nlohmann::ordered_json;

/// Serialize with insertion-ordered keys and every double rendered at 17
/// significant digits; non-finite values become the strings "inf", "-inf"
/// and "nan".
std::string dump_json17(const ordered_json& j, int indent = 2);

ordered_json report_to_json(const TestReport& report);

/// Envelope for a batch of reports: {"schema": 1, ...meta, "reports": [...],
/// "passed", "total", "pass"}.
ordered_json report_array_to_json(const std::string& label,
                                  const std::vector<TestReport>& reports);

}  // namespace betaflow
