#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pctl_bsat/rational.hpp"

namespace pctl::smt {

class SExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either an atom (symbol, numeral, decimal, or string literal kept with its
/// quotes) or a list.
struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_list = false;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view text) const { return !is_list && atom == text; }
  std::string to_string() const;
};

/// Reads every top-level s-expression. `;` comments are skipped and |quoted|
/// symbols are unquoted. Throws SExprError on unbalanced input.
std::vector<SExpr> parse_all(std::string_view text);

/// Exactly one s-expression.
SExpr parse_one(std::string_view text);

/// Value forms: k, a.b, (- v), (/ v v), with v itself any value form.
Rational to_rational(const SExpr& e);
bool to_bool(const SExpr& e);

}  // namespace pctl::smt
