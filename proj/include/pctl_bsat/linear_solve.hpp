#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include "pctl_bsat/rational.hpp"

namespace pctl {

/// Raised when elimination meets an all-zero pivot column.
class SingularSystem : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// Lower is a better pivot. For exact rationals we minimize operand size to
// limit coefficient growth; for floating point we maximize magnitude.
inline double pivot_cost(const Rational& q) {
  return static_cast<double>(mpz_sizeinbase(q.get_num_mpz_t(), 2) +
                             mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

template <typename Scalar>
double pivot_cost(const Scalar& x) {
  using std::abs;
  return -static_cast<double>(abs(x));
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

template <typename Scalar>
bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

}  // namespace detail

/// Solves A x = b by Gaussian elimination with partial pivoting. Exact when
/// Scalar is Rational. Throws SingularSystem if A is singular (exactly, for
/// Rational; for floating point only when a pivot column is exactly zero).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1> solve_linear_system(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != 1) {
    throw std::invalid_argument("solve_linear_system: dimension mismatch");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, n + 1);
  m.leftCols(n) = a;
  m.col(n) = b;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = k; i < n; ++i) {
      if (detail::is_zero(m(i, k))) continue;
      const double cost = detail::pivot_cost(m(i, k));
      if (pivot < 0 || cost < best) {
        pivot = i;
        best = cost;
      }
    }
    if (pivot < 0) throw SingularSystem("singular linear system");
    if (pivot != k) m.row(k).swap(m.row(pivot));

    const Scalar inv = Scalar(1) / m(k, k);
    for (Eigen::Index j = k; j <= n; ++j) m(k, j) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || detail::is_zero(m(i, k))) continue;
      const Scalar factor = m(i, k);
      for (Eigen::Index j = k; j <= n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return m.col(n);
}

}  // namespace pctl
