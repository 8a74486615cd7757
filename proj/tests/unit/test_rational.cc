#include <gtest/gtest.h>

#include "mlsparse/rational.h"

using mlsparse::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
}

TEST(Rational, ParsesIntegerDecimalExponentAndFraction) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("1e-3"), Rational(1, 1000));
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("1.2"), Rational(6, 5));
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
}

TEST(Rational, PrintsTerminatingDecimalsOtherwiseFraction) {
  EXPECT_EQ(Rational(5, 2).to_string(), "2.5");
  EXPECT_EQ(Rational(4, 3).to_string(), "4/3");
  EXPECT_EQ(Rational(-3).to_string(), "-3");
  EXPECT_EQ(Rational(6, 5).to_string(), "1.2");
}

TEST(Rational, FromDoubleUsesShortestRepresentation) {
  EXPECT_EQ(Rational::from_double(1.2), Rational(6, 5));
  EXPECT_EQ(Rational::from_double(0.1), Rational(1, 10));
}

TEST(Rational, ArithmeticAndOrdering) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(mlsparse::floor_to_int(Rational(-7, 2)), -4);
  EXPECT_EQ(mlsparse::floor_to_int(Rational(7, 2)), 3);
}

TEST(Rational, OverflowThrows) {
  Rational big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, std::overflow_error);
}
