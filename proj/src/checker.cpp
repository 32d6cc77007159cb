#include "pctl_bsat/checker.hpp"

#include <stdexcept>
#include <unordered_map>

#include "pctl_bsat/parser.hpp"

namespace pctl {

std::size_t StateSet::count() const {
  std::size_t n = 0;
  for (bool b : bits_) n += b;
  return n;
}

std::vector<std::size_t> StateSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < bits_.size(); ++s) {
    if (bits_[s]) out.push_back(s);
  }
  return out;
}

StateSet StateSet::complement() const {
  StateSet out(bits_.size());
  for (std::size_t s = 0; s < bits_.size(); ++s) out.bits_[s] = !bits_[s];
  return out;
}

StateSet operator&(const StateSet& a, const StateSet& b) {
  StateSet out(a.universe());
  for (std::size_t s = 0; s < a.universe(); ++s) out.bits_[s] = a.bits_[s] && b.bits_[s];
  return out;
}

StateSet operator|(const StateSet& a, const StateSet& b) {
  StateSet out(a.universe());
  for (std::size_t s = 0; s < a.universe(); ++s) out.bits_[s] = a.bits_[s] || b.bits_[s];
  return out;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class Evaluator {
 public:
  explicit Evaluator(const Dtmc& m) : m_(m) {}

  const StateSet& eval(const Formula& f) {
    const std::string key = pretty(f);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    StateSet result = compute(f);
    return cache_.emplace(key, std::move(result)).first->second;
  }

  ProbVector probabilities(const PathFormula& path) {
    return std::visit(
        overloaded{
            [&](const ast::Next& p) { return prob_next(m_, eval(p.operand)); },
            [&](const ast::Until& p) {
              const StateSet s1 = eval(p.left);
              return prob_until(m_, s1, eval(p.right));
            },
            [&](const ast::BoundedUntil& p) {
              const StateSet s1 = eval(p.left);
              return prob_bounded_until(m_, s1, eval(p.right), p.steps);
            },
            [](const auto&) -> ProbVector {
              throw std::invalid_argument("path formula is not normalized");
            },
        },
        path.node().value);
  }

 private:
  StateSet compute(const Formula& f) {
    const std::size_t n = m_.state_count();
    return std::visit(
        overloaded{
            [&](const ast::True&) { return StateSet::all(n); },
            [&](const ast::False&) { return StateSet(n); },
            [&](const ast::Atom& a) {
              StateSet s(n);
              for (std::size_t i = 0; i < n; ++i) {
                if (m_.has_label(i, a.name)) s.insert(i);
              }
              return s;
            },
            [&](const ast::Not& x) { return eval(x.operand).complement(); },
            [&](const ast::And& x) {
              const StateSet l = eval(x.left);
              return l & eval(x.right);
            },
            [&](const ast::Or& x) {
              const StateSet l = eval(x.left);
              return l | eval(x.right);
            },
            [&](const ast::Implies& x) {
              const StateSet l = eval(x.left).complement();
              return l | eval(x.right);
            },
            [&](const ast::Prob& x) {
              const ProbVector probs = probabilities(x.path);
              StateSet s(n);
              for (std::size_t i = 0; i < n; ++i) {
                if (compare(probs(static_cast<Eigen::Index>(i)), x.cmp, x.threshold)) s.insert(i);
              }
              return s;
            },
        },
        f.node().value);
  }

  const Dtmc& m_;
  std::unordered_map<std::string, StateSet> cache_;
};

}  // namespace

ProbVector path_probabilities(const Dtmc& m, const PathFormula& path) {
  return Evaluator(m).probabilities(path);
}

std::vector<StateSet> sat_sets(const Dtmc& m, const std::vector<Formula>& closure) {
  Evaluator ev(m);
  std::vector<StateSet> out;
  out.reserve(closure.size());
  for (const auto& g : closure) out.push_back(ev.eval(g));
  return out;
}

StateSet sat_set(const Dtmc& m, const Formula& f) {
  const Formula g = normalize(f);
  // Bottom-up over the closure so every subformula is evaluated once.
  const auto order = closure(g);
  return sat_sets(m, order).back();
}

bool check(const Dtmc& m, const Formula& f) {
  return sat_set(m, f).contains(Dtmc::kInitialState);
}

}  // namespace pctl
