#pragma once

#include <string>

#include "json.hpp"

#include "clustereval/metrics.h"

namespace clustereval {

// Full-detail report. Key order is fixed so equal reports serialize to equal
// bytes.
nlohmann::ordered_json report_to_json(const EvalReport& report);

// Similarity x metric x k grid of mean percentages, one decimal.
std::string format_table(const EvalReport& report);

std::string format_percent(double fraction);

}  // namespace clustereval
