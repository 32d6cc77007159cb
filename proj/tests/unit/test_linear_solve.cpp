#include <gtest/gtest.h>

#include "generators.hpp"
#include "pctl_bsat/linear_solve.hpp"

using namespace pctl;

TEST(LinearSolve, SmallExact) {
  RationalMatrix a(2, 2);
  a << 2, 1, 1, 3;
  RationalVector b(2);
  b << 1, 2;
  const RationalVector x = solve_linear_system(a, b);
  EXPECT_EQ(x(0), make_rational(1, 5));
  EXPECT_EQ(x(1), make_rational(3, 5));
}

TEST(LinearSolve, NeedsRowSwap) {
  RationalMatrix a(3, 3);
  a << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  RationalVector b(3);
  b << 7, 8, 9;
  const RationalVector x = solve_linear_system(a, b);
  EXPECT_EQ(x(0), 8);
  EXPECT_EQ(x(1), 7);
  EXPECT_EQ(x(2), 9);
}

TEST(LinearSolve, Singular) {
  RationalMatrix a(2, 2);
  a << 1, 2, 2, 4;
  RationalVector b(2);
  b << 1, 1;
  EXPECT_THROW(solve_linear_system(a, b), SingularSystem);
}

TEST(LinearSolve, DimensionMismatch) {
  RationalMatrix a(2, 3);
  a.setZero();
  RationalVector b(2);
  EXPECT_THROW(solve_linear_system(a, b), std::invalid_argument);
}

TEST(LinearSolve, DoubleScalar) {
  Eigen::MatrixXd a(2, 2);
  a << 4, 1, 2, 3;
  Eigen::VectorXd b(2);
  b << 1, 2;
  const Eigen::VectorXd x = solve_linear_system(a, b);
  EXPECT_NEAR((a * x - b).norm(), 0.0, 1e-12);
}

TEST(LinearSolveProperty, ResidualIsExactlyZero) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + gen::pick(rng, 5));
    RationalMatrix a(n, n);
    RationalVector b(n);
    // Diagonally dominant keeps the system nonsingular.
    for (Eigen::Index i = 0; i < n; ++i) {
      Rational off = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        a(i, j) = make_rational(static_cast<long>(gen::pick(rng, 7)) - 3,
                                static_cast<long>(1 + gen::pick(rng, 5)));
        off += abs(a(i, j));
      }
      a(i, i) = off + 1;
      b(i) = make_rational(static_cast<long>(gen::pick(rng, 9)) - 4, 1 + static_cast<long>(gen::pick(rng, 3)));
    }
    const RationalVector x = solve_linear_system(a, b);
    const RationalVector r = a * x - b;
    for (Eigen::Index i = 0; i < n; ++i) ASSERT_EQ(r(i), 0);
  }
}
