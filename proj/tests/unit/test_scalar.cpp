#include <gtest/gtest.h>

#include <random>

#include "dispersion/errors.hpp"
#include "dispersion/scalar.hpp"

namespace dispersion {
namespace {

TEST(Scalar, LowestTerms) {
  const Scalar s(6, 8);
  EXPECT_EQ(s.numerator(), 3);
  EXPECT_EQ(s.denominator(), 4);
  EXPECT_EQ(Scalar(3, -6).str(), "-1/2");
  EXPECT_EQ(Scalar(4, 2).str(), "2");
}

TEST(Scalar, ParsesDecimalsExactly) {
  EXPECT_EQ(Scalar::parse("0.25"), Scalar(1, 4));
  EXPECT_EQ(Scalar::parse(".5"), Scalar(1, 2));
  EXPECT_EQ(Scalar::parse("1."), Scalar(1));
  EXPECT_EQ(Scalar::parse("0.1"), Scalar(1, 10));
  EXPECT_EQ(Scalar::parse("0.333"), Scalar(333, 1000));
  EXPECT_EQ(Scalar::parse("-0.75"), Scalar(-3, 4));
}

TEST(Scalar, ParsesFractions) {
  EXPECT_EQ(Scalar::parse("3/6"), Scalar(1, 2));
  EXPECT_EQ(Scalar::parse("0/7"), Scalar(0));
  EXPECT_EQ(Scalar::parse("123456789012345678901234567890/2").str(), "61728394506172839450617283945");
}

TEST(Scalar, RejectsMalformed) {
  for (const char* bad : {"", ".", "1/0", "1/", "/2", "a", "1e3", "1.2.3", "1/2/3", "0x1", " 1"}) {
    EXPECT_THROW((void)Scalar::parse(bad), ParseError) << bad;
  }
}

TEST(Scalar, FloorCeil) {
  EXPECT_EQ(Scalar(7, 2).floor(), 3);
  EXPECT_EQ(Scalar(7, 2).ceil(), 4);
  EXPECT_EQ(Scalar(-7, 2).floor(), -4);
  EXPECT_EQ(Scalar(6, 2).ceil(), 3);
}

TEST(Scalar, DivisionByZero) {
  EXPECT_THROW((void)(Scalar(1) / Scalar(0)), DomainError);
  EXPECT_THROW((void)pow(Scalar(0), -1), DomainError);
}

TEST(Scalar, Pow) {
  EXPECT_EQ(pow(Scalar(3, 4), 4), Scalar(81, 256));
  EXPECT_EQ(pow(Scalar(2, 3), -2), Scalar(9, 4));
  EXPECT_EQ(pow(Scalar(5), 0), Scalar(1));
}

TEST(Scalar, ArithmeticRoundTripsExactly) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const Scalar a(num(rng), den(rng));
    const Scalar b(num(rng), den(rng));
    EXPECT_EQ((a + b) - b, a);
    if (b.sign() != 0) EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(Scalar::parse(a.str()), a);
    EXPECT_EQ(a < b, a.to_double() < b.to_double() || (a < b && a.to_double() == b.to_double()));
  }
}

}  // namespace
}  // namespace dispersion
