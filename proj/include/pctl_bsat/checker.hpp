#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pctl_bsat/dtmc.hpp"
#include "pctl_bsat/formula.hpp"
#include "pctl_bsat/linear_solve.hpp"

namespace pctl {

/// Set of states of one chain; the universe size is fixed at construction.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : bits_(universe, false) {}

  static StateSet all(std::size_t universe) {
    StateSet s(universe);
    s.bits_.assign(universe, true);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t s) const { return bits_[s]; }
  void insert(std::size_t s) { bits_[s] = true; }
  void erase(std::size_t s) { bits_[s] = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> members() const;

  StateSet complement() const;
  friend StateSet operator&(const StateSet& a, const StateSet& b);
  friend StateSet operator|(const StateSet& a, const StateSet& b);
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::vector<bool> bits_;
};

using ProbVector = RationalVector;

// Kernels over a dense transition matrix. They work for any scalar Eigen
// can hold; graph structure is taken from the exactly-nonzero entries.

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> prob_next(
    const Eigen::MatrixBase<Derived>& p, const StateSet& target) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> indicator(p.rows());
  for (Eigen::Index t = 0; t < p.rows(); ++t) indicator(t) = Scalar(target.contains(t) ? 1 : 0);
  return p * indicator;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> prob_bounded_until(
    const Eigen::MatrixBase<Derived>& p, const StateSet& s1, const StateSet& s2,
    std::uint32_t steps) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = p.rows();
  Vector x(n);
  for (Eigen::Index s = 0; s < n; ++s) x(s) = Scalar(s2.contains(s) ? 1 : 0);
  for (std::uint32_t m = 0; m < steps; ++m) {
    Vector y = p * x;
    for (Eigen::Index s = 0; s < n; ++s) {
      if (s2.contains(s)) {
        y(s) = Scalar(1);
      } else if (!s1.contains(s)) {
        y(s) = Scalar(0);
      }
    }
    x = std::move(y);
  }
  return x;
}

/// States with no path to s2 through s1 states: Pr(s1 U s2) = 0 exactly.
template <typename Derived>
StateSet prob0_states(const Eigen::MatrixBase<Derived>& p, const StateSet& s1,
                      const StateSet& s2) {
  const auto n = static_cast<std::size_t>(p.rows());
  StateSet reach = s2;
  std::vector<std::size_t> frontier = s2.members();
  while (!frontier.empty()) {
    const std::size_t t = frontier.back();
    frontier.pop_back();
    for (std::size_t s = 0; s < n; ++s) {
      if (reach.contains(s) || !s1.contains(s) || detail::is_zero(p(s, t))) continue;
      reach.insert(s);
      frontier.push_back(s);
    }
  }
  return reach.complement();
}

/// States where Pr(s1 U s2) = 1 exactly: those that cannot reach a
/// probability-0 state while staying in s1 \ s2.
template <typename Derived>
StateSet prob1_states(const Eigen::MatrixBase<Derived>& p, const StateSet& s1,
                      const StateSet& s2) {
  const auto n = static_cast<std::size_t>(p.rows());
  StateSet bad = prob0_states(p, s1, s2);
  const StateSet inner = s1 & s2.complement();
  std::vector<std::size_t> frontier = bad.members();
  while (!frontier.empty()) {
    const std::size_t t = frontier.back();
    frontier.pop_back();
    for (std::size_t s = 0; s < n; ++s) {
      if (bad.contains(s) || !inner.contains(s) || detail::is_zero(p(s, t))) continue;
      bad.insert(s);
      frontier.push_back(s);
    }
  }
  return bad.complement();
}

/// Least fixed point of x = 1 on s2, x = P x on s1 \ s2, x = 0 elsewhere.
/// Probability-0 and probability-1 states are fixed by graph analysis; the
/// rest is a nonsingular linear system.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> prob_until(
    const Eigen::MatrixBase<Derived>& p, const StateSet& s1, const StateSet& s2) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = static_cast<std::size_t>(p.rows());
  const StateSet zero = prob0_states(p, s1, s2);
  const StateSet one = prob1_states(p, s1, s2);

  Vector x = Vector::Zero(p.rows());
  std::vector<std::size_t> unknown;
  std::vector<Eigen::Index> slot(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (one.contains(s)) {
      x(s) = Scalar(1);
    } else if (!zero.contains(s)) {
      slot[s] = static_cast<Eigen::Index>(unknown.size());
      unknown.push_back(s);
    }
  }
  if (unknown.empty()) return x;

  const auto u = static_cast<Eigen::Index>(unknown.size());
  Matrix a = Matrix::Identity(u, u);
  Vector b = Vector::Zero(u);
  for (Eigen::Index r = 0; r < u; ++r) {
    const std::size_t s = unknown[r];
    for (std::size_t t = 0; t < n; ++t) {
      if (detail::is_zero(p(s, t))) continue;
      if (one.contains(t)) {
        b(r) += p(s, t);
      } else if (slot[t] >= 0) {
        a(r, slot[t]) -= p(s, t);
      }
    }
  }
  const Vector y = solve_linear_system(a, b);
  for (Eigen::Index r = 0; r < u; ++r) x(unknown[r]) = y(r);
  return x;
}

inline ProbVector prob_next(const Dtmc& m, const StateSet& target) {
  return prob_next(m.transitions(), target);
}
inline ProbVector prob_bounded_until(const Dtmc& m, const StateSet& s1, const StateSet& s2,
                                     std::uint32_t steps) {
  return prob_bounded_until(m.transitions(), s1, s2, steps);
}
inline ProbVector prob_until(const Dtmc& m, const StateSet& s1, const StateSet& s2) {
  return prob_until(m.transitions(), s1, s2);
}

/// Path-formula probabilities Pr_s(path) for every state s.
ProbVector path_probabilities(const Dtmc& m, const PathFormula& path);

/// {s : s |= f}. Sugar is normalized away first. Atoms missing from every
/// label set are false everywhere.
StateSet sat_set(const Dtmc& m, const Formula& f);

/// Satisfaction sets for every closure(normalize(f)) entry, in closure order.
std::vector<StateSet> sat_sets(const Dtmc& m, const std::vector<Formula>& closure);

/// m, initial state |= f.
bool check(const Dtmc& m, const Formula& f);

}  // namespace pctl
