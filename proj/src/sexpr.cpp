#include "pctl_bsat/sexpr.hpp"

#include <cctype>

namespace pctl::smt {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  bool at_end() {
    skip();
    return i_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw SExprError("unexpected end of input");
    const char c = s_[i_];
    if (c == ')') throw SExprError("unbalanced ')' at offset " + std::to_string(i_));
    if (c == '(') {
      ++i_;
      SExpr list;
      list.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw SExprError("unterminated list");
        if (s_[i_] == ')') {
          ++i_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    SExpr atom;
    if (c == '"') {
      std::size_t j = i_ + 1;
      for (;;) {
        if (j >= s_.size()) throw SExprError("unterminated string literal");
        if (s_[j] == '"') {
          if (j + 1 < s_.size() && s_[j + 1] == '"') {
            j += 2;  // "" escapes a quote
            continue;
          }
          break;
        }
        ++j;
      }
      atom.atom = std::string(s_.substr(i_, j + 1 - i_));
      i_ = j + 1;
      return atom;
    }
    if (c == '|') {
      const auto close = s_.find('|', i_ + 1);
      if (close == std::string_view::npos) throw SExprError("unterminated |symbol|");
      atom.atom = std::string(s_.substr(i_ + 1, close - i_ - 1));
      i_ = close + 1;
      return atom;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
           s_[i_] != '(' && s_[i_] != ')' && s_[i_] != ';' && s_[i_] != '"') {
      ++i_;
    }
    atom.atom = std::string(s_.substr(start, i_ - start));
    return atom;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        return;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string SExpr::to_string() const {
  if (!is_list) return atom;
  std::string out = "(";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ' ';
    out += items[k].to_string();
  }
  out += ')';
  return out;
}

std::vector<SExpr> parse_all(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

SExpr parse_one(std::string_view text) {
  auto all = parse_all(text);
  if (all.size() != 1) {
    throw SExprError("expected one s-expression, found " + std::to_string(all.size()));
  }
  return std::move(all.front());
}

Rational to_rational(const SExpr& e) {
  if (e.is_atom()) {
    Rational q;
    if (e.atom.empty() || e.atom.front() == '-' || !parse_rational(e.atom, q)) {
      throw SExprError("not a numeric literal: " + e.atom);
    }
    return q;
  }
  if (e.items.size() == 2 && e.items[0].is_atom("-")) return Rational(-to_rational(e.items[1]));
  if (e.items.size() == 3 && e.items[0].is_atom("/")) {
    const Rational den = to_rational(e.items[2]);
    if (den == 0) throw SExprError("division by zero in value " + e.to_string());
    return Rational(to_rational(e.items[1]) / den);
  }
  throw SExprError("unsupported value form " + e.to_string());
}

bool to_bool(const SExpr& e) {
  if (e.is_atom("true")) return true;
  if (e.is_atom("false")) return false;
  throw SExprError("not a boolean: " + e.to_string());
}

}  // namespace pctl::smt
