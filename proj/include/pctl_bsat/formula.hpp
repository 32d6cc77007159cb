#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pctl_bsat/rational.hpp"

namespace pctl {

enum class Comparison { kGreaterEqual, kGreater, kLessEqual, kLess, kEqual };

/// Order dual used when a probability bound is moved onto the complement
/// event: >= <-> <=, > <-> <, = stays =.
Comparison dual(Comparison cmp);

/// Surface token: ">=", ">", "<=", "<" or "=".
const char* token(Comparison cmp);

/// Exact evaluation of `value cmp threshold`.
bool compare(const Rational& value, Comparison cmp, const Rational& threshold);

struct FormulaNode;
struct PathNode;

/// Immutable PCTL state formula. Copies share structure.
class Formula {
 public:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  const FormulaNode& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  template <typename T>
  bool is() const {
    return as<T>() != nullptr;
  }

  /// Structural equality.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

class PathFormula {
 public:
  explicit PathFormula(std::shared_ptr<const PathNode> node) : node_(std::move(node)) {}

  const PathNode& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  friend bool operator==(const PathFormula& a, const PathFormula& b);

 private:
  std::shared_ptr<const PathNode> node_;
};

namespace ast {

struct True {
  bool operator==(const True&) const = default;
};
struct False {
  bool operator==(const False&) const = default;
};
struct Atom {
  std::string name;
  bool operator==(const Atom&) const = default;
};
struct Not {
  Formula operand;
  bool operator==(const Not&) const = default;
};
struct And {
  Formula left, right;
  bool operator==(const And&) const = default;
};
struct Or {
  Formula left, right;
  bool operator==(const Or&) const = default;
};
struct Implies {
  Formula left, right;
  bool operator==(const Implies&) const = default;
};
struct Prob {
  Comparison cmp;
  Rational threshold;
  PathFormula path;
  bool operator==(const Prob&) const = default;
};

struct Next {
  Formula operand;
  bool operator==(const Next&) const = default;
};
struct Until {
  Formula left, right;
  bool operator==(const Until&) const = default;
};
struct BoundedUntil {
  Formula left, right;
  std::uint32_t steps;
  bool operator==(const BoundedUntil&) const = default;
};

// Surface sugar; normalize() rewrites these away.
struct Eventually {
  Formula operand;
  bool operator==(const Eventually&) const = default;
};
struct Globally {
  Formula operand;
  bool operator==(const Globally&) const = default;
};
struct BoundedEventually {
  Formula operand;
  std::uint32_t steps;
  bool operator==(const BoundedEventually&) const = default;
};
struct BoundedGlobally {
  Formula operand;
  std::uint32_t steps;
  bool operator==(const BoundedGlobally&) const = default;
};

}  // namespace ast

struct FormulaNode {
  std::variant<ast::True, ast::False, ast::Atom, ast::Not, ast::And, ast::Or, ast::Implies,
               ast::Prob>
      value;
};

struct PathNode {
  std::variant<ast::Next, ast::Until, ast::BoundedUntil, ast::Eventually, ast::Globally,
               ast::BoundedEventually, ast::BoundedGlobally>
      value;
};

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->value);
}

template <typename T>
const T* PathFormula::as() const {
  return std::get_if<T>(&node_->value);
}

// Constructors. Atom names are not validated here; the parser enforces
// identifier syntax on text input.
Formula make_true();
Formula make_false();
Formula make_atom(std::string name);
Formula make_not(Formula f);
Formula make_and(Formula l, Formula r);
Formula make_or(Formula l, Formula r);
Formula make_implies(Formula l, Formula r);
/// Throws std::domain_error unless 0 <= threshold <= 1.
Formula make_prob(Comparison cmp, Rational threshold, PathFormula path);

PathFormula make_next(Formula f);
PathFormula make_until(Formula l, Formula r);
PathFormula make_bounded_until(Formula l, Formula r, std::uint32_t steps);
PathFormula make_eventually(Formula f);
PathFormula make_globally(Formula f);
PathFormula make_bounded_eventually(Formula f, std::uint32_t steps);
PathFormula make_bounded_globally(Formula f, std::uint32_t steps);

/// Number of state and path nodes in the tree.
std::size_t node_count(const Formula& f);

/// Atom names in first-occurrence order (left to right).
std::vector<std::string> atoms(const Formula& f);

/// Rewrites F, G, F<=k and G<=k into Until / BoundedUntil. G is removed by
/// bounding the complementary eventuality with the dual comparison.
Formula normalize(const Formula& f);

/// True if no sugar path operators remain.
bool is_normalized(const Formula& f);

/// State subformulas of a normalized formula, structurally deduplicated and
/// ordered bottom-up. Atoms come first, in first-occurrence order.
std::vector<Formula> closure(const Formula& f);

}  // namespace pctl
