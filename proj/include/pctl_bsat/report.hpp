#pragma once

#include <string>
#include <vector>

#include "pctl_bsat/solver.hpp"

namespace pctl {

inline constexpr int kReportSchema = 1;

struct RunReport {
  std::string formula;
  SearchConfig config;
  SearchResult result;
  std::vector<std::string> model_files;
};

/// report.json text:
/// { schema, formula, config:{maxStates, denominator, timeoutSecs, solverCmd},
///   bounds:[{b, verdict, seconds, assertions, bytes}], outcome, modelFiles,
///   verified }
std::string report_json(const RunReport& report);

/// Process exit status for a search outcome: 0 ModelFound, 1 NoModelUpTo,
/// 2 Inconclusive.
int exit_code(const SearchResult& result);

}  // namespace pctl
