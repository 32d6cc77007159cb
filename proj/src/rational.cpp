#include "pctl_bsat/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pctl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool parse_rational(std::string_view text, Rational& out) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return false;
    out = Rational(n, d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return false;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n(std::string(whole) + std::string(frac), 10);
    out = Rational(n, scale);
  } else {
    if (!all_digits(text)) return false;
    out = Rational(mpz_class(std::string(text), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return true;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace pctl
