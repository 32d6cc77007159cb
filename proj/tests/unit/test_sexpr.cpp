#include <gtest/gtest.h>

#include "pctl_bsat/sexpr.hpp"

using namespace pctl;
using namespace pctl::smt;

TEST(SExpr, ParsesNestedLists) {
  const auto all = parse_all("sat ((n_0_0 2) (l_0_a true)) ; trailing comment\n");
  ASSERT_EQ(all.size(), 2u);
  EXPECT_TRUE(all[0].is_atom("sat"));
  ASSERT_TRUE(all[1].is_list);
  ASSERT_EQ(all[1].items.size(), 2u);
  EXPECT_EQ(all[1].items[1].items[0].atom, "l_0_a");
  EXPECT_EQ(all[1].to_string(), "((n_0_0 2) (l_0_a true))");
}

TEST(SExpr, QuotedSymbolsAndStrings) {
  const SExpr e = parse_one("(|odd name| \"a \"\"q\"\" b\")");
  EXPECT_EQ(e.items[0].atom, "odd name");
  EXPECT_EQ(e.items[1].atom, "\"a \"\"q\"\" b\"");
}

TEST(SExpr, Unbalanced) {
  EXPECT_THROW(parse_all("(a (b)"), SExprError);
  EXPECT_THROW(parse_all("a)"), SExprError);
  EXPECT_THROW(parse_one("a b"), SExprError);
  EXPECT_THROW(parse_all("|open"), SExprError);
}

TEST(SExpr, ValueForms) {
  EXPECT_EQ(to_rational(parse_one("3")), 3);
  EXPECT_EQ(to_rational(parse_one("(- 3)")), -3);
  EXPECT_EQ(to_rational(parse_one("(/ 1 2)")), make_rational(1, 2));
  EXPECT_EQ(to_rational(parse_one("(- (/ 1 2))")), make_rational(-1, 2));
  EXPECT_EQ(to_rational(parse_one("0.75")), make_rational(3, 4));
  EXPECT_EQ(to_rational(parse_one("(/ 1.0 4.0)")), make_rational(1, 4));
  EXPECT_EQ(to_rational(parse_one("(/ (- 1) 3)")), make_rational(-1, 3));
  EXPECT_THROW(to_rational(parse_one("x")), SExprError);
  EXPECT_THROW(to_rational(parse_one("-1")), SExprError);
  EXPECT_THROW(to_rational(parse_one("(/ 1 0)")), SExprError);
  EXPECT_THROW(to_rational(parse_one("(+ 1 2)")), SExprError);
}

TEST(SExpr, Booleans) {
  EXPECT_TRUE(to_bool(parse_one("true")));
  EXPECT_FALSE(to_bool(parse_one("false")));
  EXPECT_THROW(to_bool(parse_one("1")), SExprError);
}
