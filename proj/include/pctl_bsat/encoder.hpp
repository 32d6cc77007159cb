#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pctl_bsat/dtmc.hpp"
#include "pctl_bsat/formula.hpp"

namespace pctl {

struct EncodingConfig {
  std::size_t states = 1;          ///< exact state count b of the query
  std::uint32_t denominator = 4;   ///< every probability is n/D with integer n
  bool symmetry_breaking = false;
  std::optional<std::string> logic;  ///< emitted as (set-logic ...) when set
  /// Also request the probability and satisfaction variables in get-value
  /// so decoded solver values can be compared with the checker.
  bool query_probabilities = false;
};

/// SMT-LIB v2 commands, one per entry.
struct SmtScript {
  std::vector<std::string> commands;

  std::string text() const;
  std::size_t assertion_count() const;
  std::size_t declaration_count() const;
};

/// Names of every solver variable, indexed by the model component it stands
/// for. Formula indices are positions in `closure`.
struct VariableMap {
  std::size_t states = 0;
  std::uint32_t denominator = 0;
  std::vector<std::string> atoms;
  std::vector<Formula> closure;
  std::size_t root = 0;

  std::vector<std::vector<std::string>> numerators;     ///< [i][j] n_i_j
  std::vector<std::vector<std::string>> probabilities;  ///< [i][j] p_i_j
  std::vector<std::vector<std::string>> labels;         ///< [state][atom] l_i_a
  std::vector<std::vector<std::string>> sat;            ///< [state][formula]

  /// Per Prob formula: the variable holding Pr_i(path) for each state. For
  /// bounded until this is the last step variable.
  std::map<std::size_t, std::vector<std::string>> values;
  /// Per unbounded-until formula: reachability and rank variables.
  std::map<std::size_t, std::vector<std::string>> reach;
  std::map<std::size_t, std::vector<std::string>> ranks;
  /// Per bounded-until formula: [state][step] layered values.
  std::map<std::size_t, std::vector<std::vector<std::string>>> steps;

  /// Every declared name, in declaration order.
  std::vector<std::string> all_names() const;
};

struct Encoding {
  SmtScript script;
  VariableMap variables;
};

/// Bit-exact variable names.
namespace naming {
std::string numerator(std::size_t i, std::size_t j);
std::string probability(std::size_t i, std::size_t j);
std::string label(std::size_t i, std::string_view atom);
std::string sat(std::size_t i, std::size_t formula);
std::string value(std::size_t i, std::size_t formula);
std::string step(std::size_t i, std::size_t formula, std::size_t step);
std::string reach(std::size_t i, std::size_t formula);
std::string rank(std::size_t i, std::size_t formula);
}  // namespace naming

/// Constraint system whose models are exactly the chains with cfg.states
/// states and probabilities in multiples of 1/cfg.denominator that satisfy f
/// at state 0. f is normalized first. Deterministic: equal inputs give
/// byte-identical scripts.
Encoding encode(const Formula& f, const EncodingConfig& cfg);

class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(std::string name, const std::string& why = "missing binding");
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Builds the chain from a get-value response. Throws DecodeError for missing
/// or ill-typed bindings; a StochasticityError here means the encoder or the
/// solver is wrong.
Dtmc decode_model(std::string_view raw_assignment, const VariableMap& vm,
                  const EncodingConfig& cfg);

/// Solver-side Pr_i(path) for every (state, Prob formula index) that the
/// response binds. Requires query_probabilities at encode time.
std::map<std::pair<std::size_t, std::size_t>, Rational> decode_values(
    std::string_view raw_assignment, const VariableMap& vm);

/// Solver-side truth of sat_i_f<k> for every binding in the response.
std::map<std::pair<std::size_t, std::size_t>, bool> decode_sat(std::string_view raw_assignment,
                                                               const VariableMap& vm);

}  // namespace pctl
