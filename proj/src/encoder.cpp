#include "pctl_bsat/encoder.hpp"

#include <algorithm>
#include <unordered_map>

#include "pctl_bsat/parser.hpp"
#include "pctl_bsat/sexpr.hpp"

namespace pctl {

namespace naming {
std::string numerator(std::size_t i, std::size_t j) {
  return "n_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string probability(std::size_t i, std::size_t j) {
  return "p_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string label(std::size_t i, std::string_view atom) {
  return "l_" + std::to_string(i) + "_" + std::string(atom);
}
std::string sat(std::size_t i, std::size_t formula) {
  return "sat_" + std::to_string(i) + "_f" + std::to_string(formula);
}
std::string value(std::size_t i, std::size_t formula) {
  return "x_" + std::to_string(i) + "_f" + std::to_string(formula);
}
std::string step(std::size_t i, std::size_t formula, std::size_t step) {
  return value(i, formula) + "_s" + std::to_string(step);
}
std::string reach(std::size_t i, std::size_t formula) {
  return "reach_" + std::to_string(i) + "_f" + std::to_string(formula);
}
std::string rank(std::size_t i, std::size_t formula) {
  return "d_" + std::to_string(i) + "_f" + std::to_string(formula);
}
}  // namespace naming

std::string SmtScript::text() const {
  std::string out;
  for (const auto& c : commands) {
    out += c;
    out += '\n';
  }
  return out;
}

std::size_t SmtScript::assertion_count() const {
  return static_cast<std::size_t>(std::count_if(commands.begin(), commands.end(), [](const auto& c) {
    return c.rfind("(assert ", 0) == 0;
  }));
}

std::size_t SmtScript::declaration_count() const {
  return static_cast<std::size_t>(std::count_if(commands.begin(), commands.end(), [](const auto& c) {
    return c.rfind("(declare-fun ", 0) == 0;
  }));
}

std::vector<std::string> VariableMap::all_names() const {
  std::vector<std::string> out;
  auto add_grid = [&](const std::vector<std::vector<std::string>>& grid) {
    for (const auto& row : grid) out.insert(out.end(), row.begin(), row.end());
  };
  add_grid(numerators);
  add_grid(probabilities);
  add_grid(labels);
  add_grid(sat);
  for (const auto& [k, names] : values) {
    if (!steps.count(k)) out.insert(out.end(), names.begin(), names.end());
  }
  for (const auto& [k, names] : reach) out.insert(out.end(), names.begin(), names.end());
  for (const auto& [k, names] : ranks) out.insert(out.end(), names.begin(), names.end());
  for (const auto& [k, grid] : steps) add_grid(grid);
  return out;
}

DecodeError::DecodeError(std::string name, const std::string& why)
    : std::runtime_error("cannot decode " + name + ": " + why), name_(std::move(name)) {}

namespace {

std::string real(const Rational& q) {
  if (q.get_den() == 1) {
    if (q < 0) return "(- " + Rational(-q).get_str() + ".0)";
    return q.get_str() + ".0";
  }
  const Rational a = abs(q);
  std::string frac = "(/ " + a.get_num().get_str() + ".0 " + a.get_den().get_str() + ".0)";
  return q < 0 ? "(- " + frac + ")" : frac;
}

std::string sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0.0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string int_sum(const std::vector<std::string>& terms) {
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string lor(const std::vector<std::string>& terms) {
  if (terms.empty()) return "false";
  if (terms.size() == 1) return terms.front();
  std::string out = "(or";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

// a <=_lex b over equal-length integer tuples.
std::string lex_leq(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    std::size_t k = 0) {
  if (k + 1 == a.size()) return "(<= " + a[k] + " " + b[k] + ")";
  return "(or (< " + a[k] + " " + b[k] + ") (and (= " + a[k] + " " + b[k] + ") " +
         lex_leq(a, b, k + 1) + "))";
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class Encoder {
 public:
  Encoder(const Formula& f, const EncodingConfig& cfg) : cfg_(cfg), n_(cfg.states) {
    if (cfg.states < 1) throw std::invalid_argument("encoding needs at least one state");
    if (cfg.denominator < 1) throw std::invalid_argument("denominator must be positive");
    const Formula g = normalize(f);
    vm_.states = n_;
    vm_.denominator = cfg.denominator;
    vm_.atoms = atoms(g);
    vm_.closure = closure(g);
    vm_.root = vm_.closure.size() - 1;
    for (std::size_t k = 0; k < vm_.closure.size(); ++k) index_.emplace(pretty(vm_.closure[k]), k);
  }

  Encoding run() {
    emit("(set-option :produce-models true)");
    if (cfg_.logic) emit("(set-logic " + *cfg_.logic + ")");
    stochasticity();
    labeling();
    for (std::size_t k = 0; k < vm_.closure.size(); ++k) subformula(k);
    emit("(assert " + vm_.sat[0][vm_.root] + ")");
    if (cfg_.symmetry_breaking) symmetry();
    emit("(check-sat)");
    query();
    return Encoding{std::move(script_), std::move(vm_)};
  }

 private:
  void emit(std::string command) { script_.commands.push_back(std::move(command)); }
  void declare(const std::string& name, const char* sort) {
    emit("(declare-fun " + name + " () " + sort + ")");
  }
  void assert_(const std::string& term) { emit("(assert " + term + ")"); }

  std::size_t index_of(const Formula& f) const { return index_.at(pretty(f)); }
  const std::string& sat(std::size_t i, const Formula& f) const { return vm_.sat[i][index_of(f)]; }

  std::string denominator_int() const { return std::to_string(cfg_.denominator); }

  void stochasticity() {
    vm_.numerators.assign(n_, std::vector<std::string>(n_));
    vm_.probabilities.assign(n_, std::vector<std::string>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& n = vm_.numerators[i][j] = naming::numerator(i, j);
        declare(n, "Int");
        assert_("(and (<= 0 " + n + ") (<= " + n + " " + denominator_int() + "))");
      }
      assert_("(= " + int_sum(vm_.numerators[i]) + " " + denominator_int() + ")");
    }
    const std::string d = real(Rational(cfg_.denominator));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& p = vm_.probabilities[i][j] = naming::probability(i, j);
        declare(p, "Real");
        assert_("(= (* " + d + " " + p + ") (to_real " + vm_.numerators[i][j] + "))");
      }
    }
  }

  void labeling() {
    vm_.labels.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& a : vm_.atoms) {
        vm_.labels[i].push_back(naming::label(i, a));
        declare(vm_.labels[i].back(), "Bool");
      }
    }
  }

  void subformula(std::size_t k) {
    if (vm_.sat.empty()) vm_.sat.assign(n_, std::vector<std::string>(vm_.closure.size()));
    for (std::size_t i = 0; i < n_; ++i) {
      vm_.sat[i][k] = naming::sat(i, k);
      declare(vm_.sat[i][k], "Bool");
    }
    const Formula& g = vm_.closure[k];
    std::visit(
        overloaded{
            [&](const ast::True&) {
              for (std::size_t i = 0; i < n_; ++i) assert_(vm_.sat[i][k]);
            },
            [&](const ast::False&) {
              for (std::size_t i = 0; i < n_; ++i) assert_("(not " + vm_.sat[i][k] + ")");
            },
            [&](const ast::Atom& a) {
              const auto pos = static_cast<std::size_t>(
                  std::find(vm_.atoms.begin(), vm_.atoms.end(), a.name) - vm_.atoms.begin());
              for (std::size_t i = 0; i < n_; ++i) {
                assert_("(= " + vm_.sat[i][k] + " " + vm_.labels[i][pos] + ")");
              }
            },
            [&](const ast::Not& x) {
              for (std::size_t i = 0; i < n_; ++i) {
                assert_("(= " + vm_.sat[i][k] + " (not " + sat(i, x.operand) + "))");
              }
            },
            [&](const ast::And& x) { binary(k, "and", x.left, x.right); },
            [&](const ast::Or& x) { binary(k, "or", x.left, x.right); },
            [&](const ast::Implies& x) { binary(k, "=>", x.left, x.right); },
            [&](const ast::Prob& x) { probability(k, x); },
        },
        g.node().value);
  }

  void binary(std::size_t k, const char* op, const Formula& l, const Formula& r) {
    for (std::size_t i = 0; i < n_; ++i) {
      assert_("(= " + vm_.sat[i][k] + " (" + op + " " + sat(i, l) + " " + sat(i, r) + "))");
    }
  }

  void probability(std::size_t k, const ast::Prob& prob) {
    std::vector<std::string> x(n_);
    std::visit(
        overloaded{
            [&](const ast::Next& p) {
              for (std::size_t i = 0; i < n_; ++i) {
                x[i] = naming::value(i, k);
                declare(x[i], "Real");
              }
              for (std::size_t i = 0; i < n_; ++i) {
                std::vector<std::string> terms;
                for (std::size_t j = 0; j < n_; ++j) {
                  terms.push_back("(ite " + sat(j, p.operand) + " " + vm_.probabilities[i][j] +
                                  " 0.0)");
                }
                assert_("(= " + x[i] + " " + sum(terms) + ")");
              }
            },
            [&](const ast::BoundedUntil& p) { bounded_until(k, p, x); },
            [&](const ast::Until& p) { until(k, p, x); },
            [](const auto&) { throw std::logic_error("sugar survived normalization"); },
        },
        prob.path.node().value);
    vm_.values[k] = x;
    const std::string lambda = real(prob.threshold);
    for (std::size_t i = 0; i < n_; ++i) {
      assert_("(= " + vm_.sat[i][k] + " (" + token(prob.cmp) + " " + x[i] + " " + lambda + "))");
    }
  }

  void bounded_until(std::size_t k, const ast::BoundedUntil& p, std::vector<std::string>& x) {
    auto& grid = vm_.steps[k];
    grid.assign(n_, std::vector<std::string>(p.steps + 1));
    for (std::size_t m = 0; m <= p.steps; ++m) {
      for (std::size_t i = 0; i < n_; ++i) {
        grid[i][m] = naming::step(i, k, m);
        declare(grid[i][m], "Real");
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      assert_("(= " + grid[i][0] + " (ite " + sat(i, p.right) + " 1.0 0.0))");
    }
    for (std::size_t m = 0; m < p.steps; ++m) {
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<std::string> terms;
        for (std::size_t j = 0; j < n_; ++j) {
          terms.push_back("(* " + vm_.probabilities[i][j] + " " + grid[j][m] + ")");
        }
        assert_("(= " + grid[i][m + 1] + " (ite " + sat(i, p.right) + " 1.0 (ite " +
                sat(i, p.left) + " " + sum(terms) + " 0.0)))");
      }
    }
    for (std::size_t i = 0; i < n_; ++i) x[i] = grid[i][p.steps];
  }

  // Pins x to the least fixed point: reach_i holds exactly on states with a
  // left-path to a right-state (closure gives >=, ranks give <=), and x is
  // zero off reach and balanced on it, which has a unique solution.
  void until(std::size_t k, const ast::Until& p, std::vector<std::string>& x) {
    auto& reach = vm_.reach[k];
    auto& rank = vm_.ranks[k];
    reach.resize(n_);
    rank.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      x[i] = naming::value(i, k);
      reach[i] = naming::reach(i, k);
      rank[i] = naming::rank(i, k);
      declare(x[i], "Real");
      declare(reach[i], "Bool");
      declare(rank[i], "Int");
    }
    const std::string b = std::to_string(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::string& s1 = sat(i, p.left);
      const std::string& s2 = sat(i, p.right);
      const std::string inner = "(and " + s1 + " (not " + s2 + "))";
      assert_("(and (<= 0.0 " + x[i] + ") (<= " + x[i] + " 1.0))");
      assert_("(and (<= 0 " + rank[i] + ") (< " + rank[i] + " " + b + "))");
      assert_("(=> " + s2 + " (and " + reach[i] + " (= " + x[i] + " 1.0)))");
      assert_("(=> (and (not " + s1 + ") (not " + s2 + ")) (not " + reach[i] + "))");
      std::vector<std::string> witnesses;
      std::vector<std::string> terms;
      for (std::size_t j = 0; j < n_; ++j) {
        const std::string edge = "(>= " + vm_.numerators[i][j] + " 1)";
        assert_("(=> (and " + s1 + " (not " + s2 + ") " + edge + " " + reach[j] + ") " + reach[i] +
                ")");
        witnesses.push_back("(and " + edge + " " + reach[j] + " (< " + rank[j] + " " + rank[i] +
                            "))");
        terms.push_back("(* " + vm_.probabilities[i][j] + " " + x[j] + ")");
      }
      assert_("(=> (and " + reach[i] + " (not " + s2 + ")) " + lor(witnesses) + ")");
      assert_("(=> (not " + reach[i] + ") (= " + x[i] + " 0.0))");
      assert_("(=> (and " + inner + " " + reach[i] + ") (= " + x[i] + " " + sum(terms) + "))");
    }
  }

  // States 1..b-1 are interchangeable. Their relabeling-invariant signature
  // (label bits, probability into state 0, self-loop probability) is
  // required to be non-decreasing.
  void symmetry() {
    auto signature = [&](std::size_t i) {
      std::vector<std::string> sig;
      for (const auto& l : vm_.labels[i]) sig.push_back("(ite " + l + " 1 0)");
      sig.push_back(vm_.numerators[i][0]);
      sig.push_back(vm_.numerators[i][i]);
      return sig;
    };
    for (std::size_t i = 1; i + 1 < n_; ++i) assert_(lex_leq(signature(i), signature(i + 1)));
  }

  void query() {
    std::vector<std::string> names;
    for (const auto& row : vm_.numerators) names.insert(names.end(), row.begin(), row.end());
    for (const auto& row : vm_.labels) names.insert(names.end(), row.begin(), row.end());
    if (cfg_.query_probabilities) {
      for (const auto& row : vm_.sat) names.insert(names.end(), row.begin(), row.end());
      for (const auto& [k, xs] : vm_.values) names.insert(names.end(), xs.begin(), xs.end());
    }
    std::string out = "(get-value (";
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (k) out += ' ';
      out += names[k];
    }
    emit(out + "))");
  }

  const EncodingConfig& cfg_;
  const std::size_t n_;
  VariableMap vm_;
  SmtScript script_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::unordered_map<std::string, smt::SExpr> bindings(std::string_view raw) {
  smt::SExpr response;
  try {
    response = smt::parse_one(raw);
  } catch (const smt::SExprError& e) {
    throw DecodeError("assignment", e.what());
  }
  if (!response.is_list) throw DecodeError("assignment", "not a list of bindings");
  std::unordered_map<std::string, smt::SExpr> out;
  for (auto& item : response.items) {
    if (!item.is_list || item.items.size() != 2 || !item.items[0].is_atom()) {
      throw DecodeError("assignment", "malformed binding " + item.to_string());
    }
    out.insert_or_assign(item.items[0].atom, item.items[1]);
  }
  return out;
}

}  // namespace

Encoding encode(const Formula& f, const EncodingConfig& cfg) { return Encoder(f, cfg).run(); }

Dtmc decode_model(std::string_view raw_assignment, const VariableMap& vm,
                  const EncodingConfig& cfg) {
  const auto env = bindings(raw_assignment);
  auto lookup = [&](const std::string& name) -> const smt::SExpr& {
    auto it = env.find(name);
    if (it == env.end()) throw DecodeError(name);
    return it->second;
  };
  const auto n = static_cast<Eigen::Index>(vm.states);
  RationalMatrix p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& name = vm.numerators[i][j];
      Rational value;
      try {
        value = smt::to_rational(lookup(name));
      } catch (const smt::SExprError& e) {
        throw DecodeError(name, e.what());
      }
      if (value.get_den() != 1) throw DecodeError(name, "not an integer");
      p(i, j) = Rational(value / cfg.denominator);
    }
  }
  std::vector<LabelSet> labels(vm.states);
  for (std::size_t i = 0; i < vm.states; ++i) {
    for (std::size_t a = 0; a < vm.atoms.size(); ++a) {
      const auto& name = vm.labels[i][a];
      bool on = false;
      try {
        on = smt::to_bool(lookup(name));
      } catch (const smt::SExprError& e) {
        throw DecodeError(name, e.what());
      }
      if (on) labels[i].insert(vm.atoms[a]);
    }
  }
  return Dtmc(std::move(p), std::move(labels));
}

std::map<std::pair<std::size_t, std::size_t>, Rational> decode_values(
    std::string_view raw_assignment, const VariableMap& vm) {
  const auto env = bindings(raw_assignment);
  std::map<std::pair<std::size_t, std::size_t>, Rational> out;
  for (const auto& [k, names] : vm.values) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto it = env.find(names[i]);
      if (it == env.end()) continue;
      try {
        out[{i, k}] = smt::to_rational(it->second);
      } catch (const smt::SExprError& e) {
        throw DecodeError(names[i], e.what());
      }
    }
  }
  return out;
}

std::map<std::pair<std::size_t, std::size_t>, bool> decode_sat(std::string_view raw_assignment,
                                                               const VariableMap& vm) {
  const auto env = bindings(raw_assignment);
  std::map<std::pair<std::size_t, std::size_t>, bool> out;
  for (std::size_t i = 0; i < vm.sat.size(); ++i) {
    for (std::size_t k = 0; k < vm.sat[i].size(); ++k) {
      auto it = env.find(vm.sat[i][k]);
      if (it == env.end()) continue;
      try {
        out[{i, k}] = smt::to_bool(it->second);
      } catch (const smt::SExprError& e) {
        throw DecodeError(vm.sat[i][k], e.what());
      }
    }
  }
  return out;
}

}  // namespace pctl
