#include "pctl_bsat/dtmc.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace pctl {

StochasticityError::StochasticityError(std::size_t row, Rational sum)
    : ModelError("row " + std::to_string(row) + " sums to " + to_string(sum) + ", not 1"),
      row_(row),
      sum_(std::move(sum)) {}

RangeError::RangeError(std::size_t row, std::size_t col, Rational value)
    : ModelError("transition (" + std::to_string(row) + ", " + std::to_string(col) +
                 ") has probability " + to_string(value) + " outside [0,1]"),
      row_(row),
      col_(col),
      value_(std::move(value)) {}

Dtmc::Dtmc(RationalMatrix transitions, std::vector<LabelSet> labels)
    : transitions_(std::move(transitions)), labels_(std::move(labels)) {
  if (transitions_.rows() == 0 || transitions_.rows() != transitions_.cols()) {
    throw ModelError("transition matrix must be square and nonempty");
  }
  if (labels_.size() != state_count()) {
    throw ModelError("expected " + std::to_string(state_count()) + " label sets, got " +
                     std::to_string(labels_.size()));
  }
  for (Eigen::Index i = 0; i < transitions_.rows(); ++i) {
    for (Eigen::Index j = 0; j < transitions_.cols(); ++j) {
      Rational& p = transitions_(i, j);
      p.canonicalize();
      if (p < 0 || p > 1) throw RangeError(i, j, p);
    }
    Rational sum = transitions_.row(i).sum();
    if (sum != 1) throw StochasticityError(i, sum);
  }
}

bool is_coin_simulable(const Dtmc& m, unsigned tosses) {
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, tosses);
  const auto& p = m.transitions();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (!mpz_divisible_p(limit.get_mpz_t(), p(i, j).get_den_mpz_t())) return false;
    }
  }
  return true;
}

namespace {

// Proposition ids in first-use order: states ascending, names sorted within
// a state. Id 0 is reserved for "init".
std::vector<std::string> label_order(const Dtmc& m) {
  std::vector<std::string> order;
  for (const auto& set : m.labels()) {
    for (const auto& name : set) {
      if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    }
  }
  return order;
}

}  // namespace

PrismFiles export_prism(const Dtmc& m) {
  const auto& p = m.transitions();
  std::ostringstream body;
  std::size_t nonzero = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) == 0) continue;
      ++nonzero;
      body << i << ' ' << j << ' ' << to_string(p(i, j)) << '\n';
    }
  }
  PrismFiles out;
  out.tra = std::to_string(m.state_count()) + " " + std::to_string(nonzero) + "\n" + body.str();

  const auto order = label_order(m);
  std::ostringstream lab;
  lab << "0=\"init\"";
  for (std::size_t k = 0; k < order.size(); ++k) lab << ' ' << k + 1 << "=\"" << order[k] << '"';
  lab << '\n';
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    std::vector<std::size_t> ids;
    if (s == Dtmc::kInitialState) ids.push_back(0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (m.has_label(s, order[k])) ids.push_back(k + 1);
    }
    if (ids.empty()) continue;
    lab << s << ':';
    for (auto id : ids) lab << ' ' << id;
    lab << '\n';
  }
  out.lab = lab.str();
  return out;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

std::size_t parse_index(const std::string& text, std::size_t bound, const char* what) {
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    throw ModelError(std::string("bad ") + what + " \"" + text + "\"");
  }
  if (pos != text.size() || value >= bound) {
    throw ModelError(std::string("bad ") + what + " \"" + text + "\"");
  }
  return value;
}

}  // namespace

Dtmc import_prism(std::string_view tra, std::string_view lab) {
  const auto tra_lines = split_lines(tra);
  if (tra_lines.empty()) throw ModelError(".tra: missing header");
  std::size_t states = 0, count = 0;
  {
    std::istringstream hs(tra_lines[0]);
    std::string extra;
    if (!(hs >> states >> count) || (hs >> extra) || states == 0) {
      throw ModelError(".tra: bad header \"" + tra_lines[0] + "\"");
    }
  }
  if (tra_lines.size() != count + 1) {
    throw ModelError(".tra: header declares " + std::to_string(count) + " transitions, found " +
                     std::to_string(tra_lines.size() - 1));
  }
  const auto n = static_cast<Eigen::Index>(states);
  RationalMatrix p = RationalMatrix::Zero(n, n);
  for (std::size_t k = 1; k < tra_lines.size(); ++k) {
    std::istringstream ls(tra_lines[k]);
    std::string src, dst, prob, extra;
    if (!(ls >> src >> dst >> prob) || (ls >> extra)) {
      throw ModelError(".tra: bad line \"" + tra_lines[k] + "\"");
    }
    const auto i = parse_index(src, states, "source state");
    const auto j = parse_index(dst, states, "target state");
    Rational value;
    if (!parse_rational(prob, value)) throw ModelError(".tra: bad probability \"" + prob + "\"");
    p(i, j) += value;
  }

  const auto lab_lines = split_lines(lab);
  if (lab_lines.empty()) throw ModelError(".lab: missing declaration line");
  std::map<std::size_t, std::string> names;
  {
    std::istringstream ds(lab_lines[0]);
    for (std::string decl; ds >> decl;) {
      const auto eq = decl.find('=');
      if (eq == std::string::npos || decl.size() < eq + 3 || decl[eq + 1] != '"' ||
          decl.back() != '"') {
        throw ModelError(".lab: bad declaration \"" + decl + "\"");
      }
      const auto id = parse_index(decl.substr(0, eq), std::numeric_limits<std::size_t>::max(),
                                  "label id");
      names[id] = decl.substr(eq + 2, decl.size() - eq - 3);
    }
  }
  std::vector<LabelSet> labels(states);
  std::vector<bool> init(states, false);
  for (std::size_t k = 1; k < lab_lines.size(); ++k) {
    const auto& line = lab_lines[k];
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ModelError(".lab: bad line \"" + line + "\"");
    const auto s = parse_index(line.substr(0, colon), states, "state");
    std::istringstream ls(line.substr(colon + 1));
    for (std::string id_text; ls >> id_text;) {
      const auto id = parse_index(id_text, std::numeric_limits<std::size_t>::max(), "label id");
      auto it = names.find(id);
      if (it == names.end()) throw ModelError(".lab: undeclared label id " + id_text);
      if (it->second == "init") {
        init[s] = true;
      } else {
        labels[s].insert(it->second);
      }
    }
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (init[s] != (s == Dtmc::kInitialState)) {
      throw ModelError(".lab: \"init\" must label exactly state 0");
    }
  }
  return Dtmc(std::move(p), std::move(labels));
}

std::string export_dot(const Dtmc& m) {
  std::ostringstream os;
  os << "digraph dtmc {\n";
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    os << "  s" << s << " [label=\"s" << s << "\\n{";
    bool first = true;
    for (const auto& name : m.labels()[s]) {
      if (!first) os << ", ";
      os << name;
      first = false;
    }
    os << "}\"];\n";
  }
  const auto& p = m.transitions();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) == 0) continue;
      os << "  s" << i << " -> s" << j << " [label=\"" << to_string(p(i, j)) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pctl
