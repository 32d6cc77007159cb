#include "pctl_bsat/report.hpp"

#include <json.hpp>

namespace pctl {

std::string report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["formula"] = report.formula;
  j["config"] = {
      {"maxStates", report.config.max_states},
      {"denominator", report.config.denominator},
      {"timeoutSecs", report.config.timeout.count()},
      {"solverCmd", report.config.solver_command},
  };
  auto bounds = nlohmann::ordered_json::array();
  for (const auto& rec : report.result.bounds) {
    bounds.push_back({
        {"b", rec.states},
        {"verdict", verdict_name(rec.verdict)},
        {"seconds", rec.seconds},
        {"assertions", rec.assertions},
        {"bytes", rec.script_bytes},
    });
  }
  j["bounds"] = std::move(bounds);
  j["outcome"] = outcome_name(report.result);
  j["modelFiles"] = report.model_files;
  const auto* found = std::get_if<outcome::ModelFound>(&report.result.outcome);
  j["verified"] = found != nullptr && found->verified;
  return j.dump(2) + "\n";
}

int exit_code(const SearchResult& result) {
  return static_cast<int>(result.outcome.index());
}

}  // namespace pctl
