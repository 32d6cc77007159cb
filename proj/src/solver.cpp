#include "pctl_bsat/solver.hpp"

#include <cstdlib>
#include <future>

#include "pctl_bsat/checker.hpp"
#include "pctl_bsat/process.hpp"
#include "pctl_bsat/sexpr.hpp"

namespace pctl {

std::string verdict_name(const SolverVerdict& v) {
  if (std::holds_alternative<verdict::Sat>(v)) return "sat";
  if (std::holds_alternative<verdict::Unsat>(v)) return "unsat";
  if (const auto* u = std::get_if<verdict::Unknown>(&v)) return u->timed_out ? "timeout" : "unknown";
  return "error";
}

std::string default_solver_command() {
  if (const char* env = std::getenv("PCTL_BSAT_SOLVER"); env && *env) return env;
  return "z3 -in";
}

std::string outcome_name(const SearchResult& r) {
  switch (r.outcome.index()) {
    case 0: return "ModelFound";
    case 1: return "NoModelUpTo";
    default: return "Inconclusive";
  }
}

SolverFailure::SolverFailure(std::size_t states, verdict::SolverError error)
    : std::runtime_error("solver failed at " + std::to_string(states) + " states: " +
                         error.message + (error.stderr_text.empty() ? "" : "\n" + error.stderr_text)),
      states_(states),
      error_(std::move(error)) {}

namespace {

std::string describe_exit(std::optional<int> exit_code) {
  return exit_code ? "exit code " + std::to_string(*exit_code) : "abnormal termination";
}

}  // namespace

SolverVerdict parse_solver_output(std::string_view out, std::optional<int> exit_code,
                                  std::string_view err) {
  auto error = [&](std::string message) {
    return verdict::SolverError{std::move(message), describe_exit(exit_code), std::string(err)};
  };
  std::vector<smt::SExpr> items;
  try {
    items = smt::parse_all(out);
  } catch (const smt::SExprError& e) {
    return error(std::string("unparseable solver output: ") + e.what());
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& item = items[k];
    if (item.is_atom("unsat")) return verdict::Unsat{};
    if (item.is_atom("unknown")) return verdict::Unknown{false, "solver answered unknown"};
    if (!item.is_atom("sat")) continue;
    if (k + 1 >= items.size() || !items[k + 1].is_list) {
      return error("sat without a get-value response");
    }
    const auto& model = items[k + 1];
    if (!model.items.empty() && model.items[0].is_atom("error")) {
      return error("get-value failed: " + model.to_string());
    }
    return verdict::Sat{model.to_string()};
  }
  return error(items.empty() ? "no output from solver" : "no status token in solver output");
}

SolverVerdict solve_script(const SmtScript& script, const SearchConfig& cfg) {
  std::vector<std::string> argv;
  try {
    argv = split_command(cfg.solver_command);
  } catch (const std::invalid_argument& e) {
    return verdict::SolverError{e.what(), "not started", {}};
  }
  if (argv.empty()) return verdict::SolverError{"empty solver command", "not started", {}};
  try {
    TempFile file(script.text(), ".smt2");
    bool placeholder = false;
    for (auto& word : argv) {
      for (auto pos = word.find("{file}"); pos != std::string::npos; pos = word.find("{file}")) {
        word.replace(pos, 6, file.path());
        placeholder = true;
      }
    }
    const ProcessResult run = run_process(argv, placeholder ? "" : file.path(), cfg.timeout);
    if (run.timed_out) return verdict::Unknown{true, "timeout"};
    if (!run.exit_code) {
      auto v = parse_solver_output(run.out, run.exit_code, run.err);
      if (auto* e = std::get_if<verdict::SolverError>(&v)) {
        e->exit_info = "killed by signal " + std::to_string(run.term_signal.value_or(0));
      }
      return v;
    }
    return parse_solver_output(run.out, run.exit_code, run.err);
  } catch (const SpawnError& e) {
    return verdict::SolverError{e.what(), "not started", {}};
  }
}

namespace {

struct BoundRun {
  BoundRecord record;
  VariableMap variables;
};

BoundRun run_bound(const Formula& f, std::size_t states, const SearchConfig& cfg) {
  EncodingConfig ecfg;
  ecfg.states = states;
  ecfg.denominator = cfg.denominator;
  ecfg.symmetry_breaking = cfg.symmetry_breaking;
  ecfg.logic = cfg.logic;
  Encoding enc = encode(f, ecfg);
  BoundRun run;
  run.record.states = states;
  run.record.script_bytes = enc.script.text().size();
  run.record.assertions = enc.script.assertion_count();
  const auto start = std::chrono::steady_clock::now();
  run.record.verdict = solve_script(enc.script, cfg);
  run.record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.variables = std::move(enc.variables);
  return run;
}

}  // namespace

SearchResult bounded_search(const Formula& f, const SearchConfig& cfg) {
  if (cfg.max_states < 1) throw std::invalid_argument("max_states must be at least 1");
  if (cfg.timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  const Formula g = normalize(f);

  std::vector<std::future<BoundRun>> pending;
  if (cfg.parallel_bounds) {
    for (std::size_t b = 1; b <= cfg.max_states; ++b) {
      pending.push_back(std::async(std::launch::async, run_bound, g, b, cfg));
    }
  }
  auto result_for = [&](std::size_t b) {
    return cfg.parallel_bounds ? pending[b - 1].get() : run_bound(g, b, cfg);
  };

  // The coordinator applies the same ascending decision rule either way; in
  // parallel mode the futures past the first SAT are joined and discarded.
  struct Join {
    std::vector<std::future<BoundRun>>& futures;
    ~Join() {
      for (auto& fut : futures) {
        if (fut.valid()) fut.wait();
      }
    }
  } join{pending};

  SearchResult result{outcome::NoModelUpTo{cfg.max_states}, {}};
  std::optional<std::size_t> first_unknown;
  EncodingConfig ecfg;
  ecfg.denominator = cfg.denominator;
  for (std::size_t b = 1; b <= cfg.max_states; ++b) {
    BoundRun run = result_for(b);
    result.bounds.push_back(run.record);
    const auto& v = run.record.verdict;
    if (const auto* e = std::get_if<verdict::SolverError>(&v)) throw SolverFailure(b, *e);
    if (std::holds_alternative<verdict::Unknown>(v)) {
      if (!first_unknown) first_unknown = b;
      continue;
    }
    if (const auto* sat = std::get_if<verdict::Sat>(&v)) {
      ecfg.states = b;
      Dtmc model = decode_model(sat->assignment, run.variables, ecfg);
      bool verified = false;
      if (cfg.verify) {
        if (!check(model, g)) {
          throw InternalSoundnessError("decoded " + std::to_string(b) +
                                       "-state model fails the independent check");
        }
        verified = true;
      }
      result.outcome = outcome::ModelFound{b, std::move(model), verified};
      return result;
    }
  }
  if (first_unknown) result.outcome = outcome::Inconclusive{*first_unknown};
  return result;
}

}  // namespace pctl
