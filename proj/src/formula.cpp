#include "pctl_bsat/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "pctl_bsat/parser.hpp"

namespace pctl {

Comparison dual(Comparison cmp) {
  switch (cmp) {
    case Comparison::kGreaterEqual: return Comparison::kLessEqual;
    case Comparison::kGreater: return Comparison::kLess;
    case Comparison::kLessEqual: return Comparison::kGreaterEqual;
    case Comparison::kLess: return Comparison::kGreater;
    case Comparison::kEqual: return Comparison::kEqual;
  }
  throw std::logic_error("bad comparison");
}

const char* token(Comparison cmp) {
  switch (cmp) {
    case Comparison::kGreaterEqual: return ">=";
    case Comparison::kGreater: return ">";
    case Comparison::kLessEqual: return "<=";
    case Comparison::kLess: return "<";
    case Comparison::kEqual: return "=";
  }
  throw std::logic_error("bad comparison");
}

bool compare(const Rational& value, Comparison cmp, const Rational& threshold) {
  switch (cmp) {
    case Comparison::kGreaterEqual: return value >= threshold;
    case Comparison::kGreater: return value > threshold;
    case Comparison::kLessEqual: return value <= threshold;
    case Comparison::kLess: return value < threshold;
    case Comparison::kEqual: return value == threshold;
  }
  throw std::logic_error("bad comparison");
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.node_->value == b.node_->value;
}

bool operator==(const PathFormula& a, const PathFormula& b) {
  return a.node_ == b.node_ || a.node_->value == b.node_->value;
}

namespace {

Formula wrap(decltype(FormulaNode::value) v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::move(v)}));
}

PathFormula wrap_path(decltype(PathNode::value) v) {
  return PathFormula(std::make_shared<const PathNode>(PathNode{std::move(v)}));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Formula make_true() { return wrap(ast::True{}); }
Formula make_false() { return wrap(ast::False{}); }
Formula make_atom(std::string name) { return wrap(ast::Atom{std::move(name)}); }
Formula make_not(Formula f) { return wrap(ast::Not{std::move(f)}); }
Formula make_and(Formula l, Formula r) { return wrap(ast::And{std::move(l), std::move(r)}); }
Formula make_or(Formula l, Formula r) { return wrap(ast::Or{std::move(l), std::move(r)}); }
Formula make_implies(Formula l, Formula r) {
  return wrap(ast::Implies{std::move(l), std::move(r)});
}

Formula make_prob(Comparison cmp, Rational threshold, PathFormula path) {
  threshold.canonicalize();
  if (threshold < 0 || threshold > 1) {
    throw std::domain_error("probability threshold " + to_string(threshold) +
                            " outside [0,1]");
  }
  return wrap(ast::Prob{cmp, std::move(threshold), std::move(path)});
}

PathFormula make_next(Formula f) { return wrap_path(ast::Next{std::move(f)}); }
PathFormula make_until(Formula l, Formula r) {
  return wrap_path(ast::Until{std::move(l), std::move(r)});
}
PathFormula make_bounded_until(Formula l, Formula r, std::uint32_t steps) {
  return wrap_path(ast::BoundedUntil{std::move(l), std::move(r), steps});
}
PathFormula make_eventually(Formula f) { return wrap_path(ast::Eventually{std::move(f)}); }
PathFormula make_globally(Formula f) { return wrap_path(ast::Globally{std::move(f)}); }
PathFormula make_bounded_eventually(Formula f, std::uint32_t steps) {
  return wrap_path(ast::BoundedEventually{std::move(f), steps});
}
PathFormula make_bounded_globally(Formula f, std::uint32_t steps) {
  return wrap_path(ast::BoundedGlobally{std::move(f), steps});
}

namespace {

// Children of a state formula, including those reached through its path.
std::vector<Formula> children(const Formula& f) {
  return std::visit(
      overloaded{
          [](const ast::True&) { return std::vector<Formula>{}; },
          [](const ast::False&) { return std::vector<Formula>{}; },
          [](const ast::Atom&) { return std::vector<Formula>{}; },
          [](const ast::Not& n) { return std::vector<Formula>{n.operand}; },
          [](const ast::And& n) { return std::vector<Formula>{n.left, n.right}; },
          [](const ast::Or& n) { return std::vector<Formula>{n.left, n.right}; },
          [](const ast::Implies& n) { return std::vector<Formula>{n.left, n.right}; },
          [](const ast::Prob& n) {
            return std::visit(
                overloaded{
                    [](const ast::Next& p) { return std::vector<Formula>{p.operand}; },
                    [](const ast::Until& p) { return std::vector<Formula>{p.left, p.right}; },
                    [](const ast::BoundedUntil& p) {
                      return std::vector<Formula>{p.left, p.right};
                    },
                    [](const ast::Eventually& p) { return std::vector<Formula>{p.operand}; },
                    [](const ast::Globally& p) { return std::vector<Formula>{p.operand}; },
                    [](const ast::BoundedEventually& p) {
                      return std::vector<Formula>{p.operand};
                    },
                    [](const ast::BoundedGlobally& p) {
                      return std::vector<Formula>{p.operand};
                    },
                },
                n.path.node().value);
          },
      },
      f.node().value);
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (const auto* a = f.as<ast::Atom>()) {
    if (std::find(out.begin(), out.end(), a->name) == out.end()) out.push_back(a->name);
    return;
  }
  for (const auto& c : children(f)) collect_atoms(c, out);
}

void post_order(const Formula& f, std::unordered_set<std::string>& seen,
                std::vector<Formula>& out) {
  for (const auto& c : children(f)) post_order(c, seen, out);
  if (f.is<ast::Atom>()) return;
  if (seen.insert(pretty(f)).second) out.push_back(f);
}

}  // namespace

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  if (f.is<ast::Prob>()) ++n;  // the path node
  for (const auto& c : children(f)) n += node_count(c);
  return n;
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

Formula normalize(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const ast::True&) { return f; },
          [&](const ast::False&) { return f; },
          [&](const ast::Atom&) { return f; },
          [](const ast::Not& n) { return make_not(normalize(n.operand)); },
          [](const ast::And& n) { return make_and(normalize(n.left), normalize(n.right)); },
          [](const ast::Or& n) { return make_or(normalize(n.left), normalize(n.right)); },
          [](const ast::Implies& n) {
            return make_implies(normalize(n.left), normalize(n.right));
          },
          [](const ast::Prob& n) {
            const Comparison cmp = n.cmp;
            const Rational& lambda = n.threshold;
            return std::visit(
                overloaded{
                    [&](const ast::Next& p) {
                      return make_prob(cmp, lambda, make_next(normalize(p.operand)));
                    },
                    [&](const ast::Until& p) {
                      return make_prob(cmp, lambda,
                                       make_until(normalize(p.left), normalize(p.right)));
                    },
                    [&](const ast::BoundedUntil& p) {
                      return make_prob(cmp, lambda,
                                       make_bounded_until(normalize(p.left),
                                                          normalize(p.right), p.steps));
                    },
                    [&](const ast::Eventually& p) {
                      return make_prob(cmp, lambda, make_until(make_true(), normalize(p.operand)));
                    },
                    [&](const ast::BoundedEventually& p) {
                      return make_prob(
                          cmp, lambda,
                          make_bounded_until(make_true(), normalize(p.operand), p.steps));
                    },
                    // Pr(G psi) = 1 - Pr(F !psi)
                    [&](const ast::Globally& p) {
                      return make_prob(dual(cmp), Rational(1 - lambda),
                                       make_until(make_true(), make_not(normalize(p.operand))));
                    },
                    [&](const ast::BoundedGlobally& p) {
                      return make_prob(dual(cmp), Rational(1 - lambda),
                                       make_bounded_until(make_true(),
                                                          make_not(normalize(p.operand)),
                                                          p.steps));
                    },
                },
                n.path.node().value);
          },
      },
      f.node().value);
}

bool is_normalized(const Formula& f) {
  if (const auto* p = f.as<ast::Prob>()) {
    if (!p->path.as<ast::Next>() && !p->path.as<ast::Until>() &&
        !p->path.as<ast::BoundedUntil>()) {
      return false;
    }
  }
  for (const auto& c : children(f)) {
    if (!is_normalized(c)) return false;
  }
  return true;
}

std::vector<Formula> closure(const Formula& f) {
  std::vector<Formula> out;
  for (auto& name : atoms(f)) out.push_back(make_atom(std::move(name)));
  std::unordered_set<std::string> seen;
  post_order(f, seen, out);
  return out;
}

}  // namespace pctl
