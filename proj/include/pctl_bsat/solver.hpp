#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pctl_bsat/dtmc.hpp"
#include "pctl_bsat/encoder.hpp"
#include "pctl_bsat/formula.hpp"

namespace pctl {

namespace verdict {
struct Sat {
  std::string assignment;  ///< the get-value response, verbatim
};
struct Unsat {};
struct Unknown {
  bool timed_out = false;
  std::string reason;
};
struct SolverError {
  std::string message;
  std::string exit_info;
  std::string stderr_text;
};
}  // namespace verdict

using SolverVerdict =
    std::variant<verdict::Sat, verdict::Unsat, verdict::Unknown, verdict::SolverError>;

/// "sat", "unsat", "unknown", "timeout" or "error".
std::string verdict_name(const SolverVerdict& v);

/// Solver command used when none is given: $PCTL_BSAT_SOLVER, else "z3 -in".
std::string default_solver_command();

struct SearchConfig {
  std::size_t max_states = 1;
  std::uint32_t denominator = 4;
  std::chrono::duration<double> timeout{60.0};
  /// Executable plus arguments. A "{file}" word is replaced by a temporary
  /// script path; otherwise the script arrives on standard input.
  std::string solver_command = default_solver_command();
  bool parallel_bounds = false;
  bool verify = true;
  bool symmetry_breaking = false;
  std::optional<std::string> logic;
};

/// Interprets solver standard output. The first sat/unsat/unknown token is
/// the status; after sat the next s-expression must be the get-value list.
SolverVerdict parse_solver_output(std::string_view out, std::optional<int> exit_code,
                                  std::string_view err = {});

/// Runs one solver process on the script, killing it after cfg.timeout.
SolverVerdict solve_script(const SmtScript& script, const SearchConfig& cfg);

struct BoundRecord {
  std::size_t states = 0;
  SolverVerdict verdict;
  double seconds = 0;
  std::size_t script_bytes = 0;
  std::size_t assertions = 0;
};

namespace outcome {
struct ModelFound {
  std::size_t states;
  Dtmc model;
  bool verified;
};
struct NoModelUpTo {
  std::size_t max_states;
};
struct Inconclusive {
  std::size_t first_unknown;
};
}  // namespace outcome

struct SearchResult {
  std::variant<outcome::ModelFound, outcome::NoModelUpTo, outcome::Inconclusive> outcome;
  std::vector<BoundRecord> bounds;  ///< ascending b; stops at the first SAT
};

/// "ModelFound", "NoModelUpTo" or "Inconclusive".
std::string outcome_name(const SearchResult& r);

/// The decoded model failed the independent checker.
class InternalSoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A solver process failed outright at some bound.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(std::size_t states, verdict::SolverError error);
  std::size_t states() const { return states_; }
  const verdict::SolverError& error() const { return error_; }

 private:
  std::size_t states_;
  verdict::SolverError error_;
};

/// Tries b = 1 .. cfg.max_states and returns at the first SAT bound, so the
/// model is state-minimal for cfg.denominator when no earlier bound was
/// Unknown. With cfg.verify every decoded model is re-checked and a failure
/// throws InternalSoundnessError. SolverError verdicts throw SolverFailure.
SearchResult bounded_search(const Formula& f, const SearchConfig& cfg);

}  // namespace pctl
