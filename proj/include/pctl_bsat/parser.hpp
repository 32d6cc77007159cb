#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pctl_bsat/formula.hpp"

namespace pctl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error(message), position_(position) {}

  /// Byte offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected);

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

/// Probability literal outside [0,1] (or with a zero denominator).
class ThresholdError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Step bound that is not a representable nonnegative integer.
class BoundError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Parses the ASCII PCTL surface syntax. Sugar (F, G, F<=k, G<=k) is kept in
/// the tree; call normalize() to remove it.
///
///   state := true | false | IDENT | !state | state & state | state | state
///          | state -> state | P CMP PROB [ path ] | ( state )
///   path  := X state | state U state | state U<=NAT state
///          | F state | G state | F<=NAT state | G<=NAT state
///
/// Precedence ! > & > | > ->, with & and | left-associative and ->
/// right-associative. "//" starts a comment running to end of line.
Formula parse(std::string_view text);

/// Inverse of parse(): parse(pretty(f)) == f for every formula whose atom
/// names are identifiers other than the reserved words.
std::string pretty(const Formula& f);
std::string pretty(const PathFormula& p);

/// true, false, P, X, U, F, G.
bool is_reserved_word(std::string_view word);

}  // namespace pctl
