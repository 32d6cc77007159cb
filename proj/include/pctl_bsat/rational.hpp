#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace pctl {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Builds num/den in canonical form. Throws std::domain_error if den == 0.
Rational make_rational(long num, long den);

/// Parses "k", "n/d" or a decimal "a.b" into an exact rational.
/// Returns false on malformed text (including a zero denominator).
bool parse_rational(std::string_view text, Rational& out);

/// "n/d" in lowest terms, or a bare integer when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace pctl

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  // Exact arithmetic: there is no rounding to tolerate.
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
