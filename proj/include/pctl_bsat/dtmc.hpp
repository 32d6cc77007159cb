#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pctl_bsat/rational.hpp"

namespace pctl {

using LabelSet = std::set<std::string>;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A row of the transition matrix does not sum to exactly one.
class StochasticityError : public ModelError {
 public:
  StochasticityError(std::size_t row, Rational sum);
  std::size_t row() const { return row_; }
  const Rational& sum() const { return sum_; }

 private:
  std::size_t row_;
  Rational sum_;
};

/// A transition probability outside [0,1].
class RangeError : public ModelError {
 public:
  RangeError(std::size_t row, std::size_t col, Rational value);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  const Rational& value() const { return value_; }

 private:
  std::size_t row_, col_;
  Rational value_;
};

/// Finite discrete-time Markov chain with exact rational probabilities.
/// State 0 is the initial state. Immutable once constructed.
class Dtmc {
 public:
  static constexpr std::size_t kInitialState = 0;

  /// Validates the matrix: square, nonempty, entries in [0,1], rows summing
  /// to exactly 1. `labels` must have one entry per state.
  Dtmc(RationalMatrix transitions, std::vector<LabelSet> labels);

  std::size_t state_count() const { return static_cast<std::size_t>(transitions_.rows()); }
  const RationalMatrix& transitions() const { return transitions_; }
  const Rational& probability(std::size_t from, std::size_t to) const {
    return transitions_(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
  }
  const std::vector<LabelSet>& labels() const { return labels_; }
  bool has_label(std::size_t state, const std::string& atom) const {
    return labels_[state].count(atom) != 0;
  }

  friend bool operator==(const Dtmc& a, const Dtmc& b) {
    return a.labels_ == b.labels_ && a.transitions_.rows() == b.transitions_.rows() &&
           a.transitions_ == b.transitions_;
  }

 private:
  RationalMatrix transitions_;
  std::vector<LabelSet> labels_;
};

/// True iff every transition probability has a denominator dividing 2^tosses.
bool is_coin_simulable(const Dtmc& m, unsigned tosses);

struct PrismFiles {
  std::string tra;
  std::string lab;
};

/// Explicit-state .tra/.lab text. Zero-probability transitions are omitted;
/// probabilities are printed as lowest-terms fractions.
PrismFiles export_prism(const Dtmc& m);

/// Reads .tra/.lab text back. Probabilities may be fractions, integers or
/// decimals. The "init" label must mark exactly state 0.
/// Throws ModelError (or a subclass) on malformed input.
Dtmc import_prism(std::string_view tra, std::string_view lab);

/// Graphviz digraph with one edge per nonzero transition.
std::string export_dot(const Dtmc& m);

}  // namespace pctl
