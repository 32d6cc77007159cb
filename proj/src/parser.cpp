#include "pctl_bsat/parser.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace pctl {

namespace {

std::string describe(std::size_t position, const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "syntax error at offset " << position << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  return os.str();
}

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kBang,
  kAmp,
  kBar,
  kArrow,
  kGe,
  kGt,
  kLe,
  kLt,
  kEq,
  kSlash,
  kTrue,
  kFalse,
  kP,
  kX,
  kU,
  kF,
  kG,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::kEnd, {}, i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, std::size_t len) {
    Token t{kind, src_.substr(i_, len), i_};
    i_ += len;
    return t;
  }

  Token next() {
    const char c = src_[i_];
    const char d = i_ + 1 < src_.size() ? src_[i_ + 1] : '\0';
    switch (c) {
      case '(': return make(Tok::kLParen, 1);
      case ')': return make(Tok::kRParen, 1);
      case '[': return make(Tok::kLBracket, 1);
      case ']': return make(Tok::kRBracket, 1);
      case '!': return make(Tok::kBang, 1);
      case '&': return make(Tok::kAmp, 1);
      case '|': return make(Tok::kBar, 1);
      case '/': return make(Tok::kSlash, 1);
      case '=': return make(Tok::kEq, 1);
      case '>': return d == '=' ? make(Tok::kGe, 2) : make(Tok::kGt, 1);
      case '<': return d == '=' ? make(Tok::kLe, 2) : make(Tok::kLt, 1);
      case '-':
        if (d == '>') return make(Tok::kArrow, 2);
        throw SyntaxError(i_, {"\"->\""});
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      if (j < src_.size() && src_[j] == '.') {
        ++j;
        if (j >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[j]))) {
          throw SyntaxError(j, {"digit"});
        }
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      }
      return make(Tok::kNumber, j - i_);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
        ++j;
      }
      const auto word = src_.substr(i_, j - i_);
      Tok kind = Tok::kIdent;
      if (word == "true") kind = Tok::kTrue;
      else if (word == "false") kind = Tok::kFalse;
      else if (word == "P") kind = Tok::kP;
      else if (word == "X") kind = Tok::kX;
      else if (word == "U") kind = Tok::kU;
      else if (word == "F") kind = Tok::kF;
      else if (word == "G") kind = Tok::kG;
      return make(kind, j - i_);
    }
    throw SyntaxError(i_, {"a PCTL token"});
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Formula run() {
    Formula f = state();
    if (peek().kind != Tok::kEnd) fail({"end of input", "\"&\"", "\"|\"", "\"->\""});
    return f;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& advance() { return toks_[k_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++k_;
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().pos, std::move(expected));
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail({what});
  }

  Formula state() {
    Formula left = disjunction();
    if (accept(Tok::kArrow)) return make_implies(std::move(left), state());
    return left;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::kBar)) f = make_or(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::kAmp)) f = make_and(std::move(f), unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kBang: advance(); return make_not(unary());
      case Tok::kTrue: advance(); return make_true();
      case Tok::kFalse: advance(); return make_false();
      case Tok::kIdent: advance(); return make_atom(std::string(t.text));
      case Tok::kLParen: {
        advance();
        Formula f = state();
        expect(Tok::kRParen, "\")\"");
        return f;
      }
      case Tok::kP: advance(); return probability();
      default: fail({"\"true\"", "\"false\"", "identifier", "\"!\"", "\"(\"", "\"P\""});
    }
  }

  Comparison comparison() {
    switch (advance().kind) {
      case Tok::kGe: return Comparison::kGreaterEqual;
      case Tok::kGt: return Comparison::kGreater;
      case Tok::kLe: return Comparison::kLessEqual;
      case Tok::kLt: return Comparison::kLess;
      case Tok::kEq: return Comparison::kEqual;
      default:
        --k_;
        fail({"\">=\"", "\">\"", "\"<=\"", "\"<\"", "\"=\""});
    }
  }

  Rational threshold() {
    const Token& num = peek();
    if (num.kind != Tok::kNumber) fail({"probability"});
    advance();
    Rational value;
    if (accept(Tok::kSlash)) {
      const Token& den = peek();
      if (den.kind != Tok::kNumber || den.text.find('.') != std::string_view::npos ||
          num.text.find('.') != std::string_view::npos) {
        fail({"natural number"});
      }
      advance();
      std::string text = std::string(num.text) + "/" + std::string(den.text);
      if (!parse_rational(text, value)) {
        throw ThresholdError(num.pos, "probability " + text + " has a zero denominator");
      }
    } else {
      parse_rational(num.text, value);
    }
    if (value < 0 || value > 1) {
      throw ThresholdError(num.pos, "probability " + to_string(value) + " outside [0,1]");
    }
    return value;
  }

  std::uint32_t step_bound() {
    const Token& t = peek();
    if (t.kind != Tok::kNumber || t.text.find('.') != std::string_view::npos) {
      throw BoundError(t.pos, "step bound must be a nonnegative integer");
    }
    advance();
    mpz_class value(std::string(t.text), 10);
    if (value > std::numeric_limits<std::uint32_t>::max()) {
      throw BoundError(t.pos, "step bound " + std::string(t.text) + " is too large");
    }
    return static_cast<std::uint32_t>(value.get_ui());
  }

  Formula probability() {
    const Comparison cmp = comparison();
    Rational lambda = threshold();
    expect(Tok::kLBracket, "\"[\"");
    PathFormula p = path();
    expect(Tok::kRBracket, "\"]\"");
    return make_prob(cmp, std::move(lambda), std::move(p));
  }

  PathFormula path() {
    if (accept(Tok::kX)) return make_next(state());
    if (accept(Tok::kF)) {
      if (accept(Tok::kLe)) {
        const auto k = step_bound();
        return make_bounded_eventually(state(), k);
      }
      return make_eventually(state());
    }
    if (accept(Tok::kG)) {
      if (accept(Tok::kLe)) {
        const auto k = step_bound();
        return make_bounded_globally(state(), k);
      }
      return make_globally(state());
    }
    Formula left = state();
    expect(Tok::kU, "\"U\"");
    if (accept(Tok::kLe)) {
      const auto k = step_bound();
      return make_bounded_until(std::move(left), state(), k);
    }
    return make_until(std::move(left), state());
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

// Binding strength; a child printed below its required level is parenthesized.
enum Level { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void print(const Formula& f, int min_level, std::string& out);

void print_path(const PathFormula& p, std::string& out) {
  std::visit(overloaded{
                 [&](const ast::Next& n) {
                   out += "X ";
                   print(n.operand, kImplies, out);
                 },
                 [&](const ast::Until& n) {
                   print(n.left, kImplies, out);
                   out += " U ";
                   print(n.right, kImplies, out);
                 },
                 [&](const ast::BoundedUntil& n) {
                   print(n.left, kImplies, out);
                   out += " U<=" + std::to_string(n.steps) + " ";
                   print(n.right, kImplies, out);
                 },
                 [&](const ast::Eventually& n) {
                   out += "F ";
                   print(n.operand, kImplies, out);
                 },
                 [&](const ast::Globally& n) {
                   out += "G ";
                   print(n.operand, kImplies, out);
                 },
                 [&](const ast::BoundedEventually& n) {
                   out += "F<=" + std::to_string(n.steps) + " ";
                   print(n.operand, kImplies, out);
                 },
                 [&](const ast::BoundedGlobally& n) {
                   out += "G<=" + std::to_string(n.steps) + " ";
                   print(n.operand, kImplies, out);
                 },
             },
             p.node().value);
}

void print_binary(const Formula& l, const Formula& r, int level, int left_min, int right_min,
                  const char* op, int min_level, std::string& out) {
  const bool paren = level < min_level;
  if (paren) out += '(';
  print(l, left_min, out);
  out += op;
  print(r, right_min, out);
  if (paren) out += ')';
}

void print(const Formula& f, int min_level, std::string& out) {
  std::visit(overloaded{
                 [&](const ast::True&) { out += "true"; },
                 [&](const ast::False&) { out += "false"; },
                 [&](const ast::Atom& a) { out += a.name; },
                 [&](const ast::Not& n) {
                   out += '!';
                   print(n.operand, kUnary, out);
                 },
                 [&](const ast::And& n) {
                   print_binary(n.left, n.right, kAnd, kAnd, kUnary, " & ", min_level, out);
                 },
                 [&](const ast::Or& n) {
                   print_binary(n.left, n.right, kOr, kOr, kAnd, " | ", min_level, out);
                 },
                 [&](const ast::Implies& n) {
                   print_binary(n.left, n.right, kImplies, kOr, kImplies, " -> ", min_level,
                                out);
                 },
                 [&](const ast::Prob& p) {
                   out += 'P';
                   out += token(p.cmp);
                   out += to_string(p.threshold);
                   out += '[';
                   print_path(p.path, out);
                   out += ']';
                 },
             },
             f.node().value);
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected)
    : ParseError(position, describe(position, expected)), expected_(std::move(expected)) {}

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string pretty(const Formula& f) {
  std::string out;
  print(f, kImplies, out);
  return out;
}

std::string pretty(const PathFormula& p) {
  std::string out;
  print_path(p, out);
  return out;
}

bool is_reserved_word(std::string_view word) {
  return word == "true" || word == "false" || word == "P" || word == "X" || word == "U" ||
         word == "F" || word == "G";
}

}  // namespace pctl
