#include <gtest/gtest.h>

#include <random>

#include "lfd/decimal.hpp"

namespace lfd {
namespace {

TEST(FormatDecimal, MinimalDigits) {
  EXPECT_EQ(format_decimal(3000), "3000");
  EXPECT_EQ(format_decimal(20.0), "20");
  EXPECT_EQ(format_decimal(2.42233445), "2.4223");
  EXPECT_EQ(format_decimal(0.5), "0.5");
  EXPECT_EQ(format_decimal(19.2), "19.2");
  EXPECT_EQ(format_decimal(-1.25), "-1.25");
  EXPECT_EQ(format_decimal(-0.00001), "0");
  EXPECT_EQ(format_decimal(-0.0), "0");
  EXPECT_EQ(format_decimal(66.666666, 2), "66.67");
}

TEST(ParseDecimal, AcceptsPlainDecimals) {
  EXPECT_EQ(parse_decimal("12"), 12.0);
  EXPECT_EQ(parse_decimal("-0.5"), -0.5);
  EXPECT_EQ(parse_decimal("+3."), 3.0);
  EXPECT_EQ(parse_decimal(".25"), 0.25);
}

TEST(ParseDecimal, RejectsEverythingElse) {
  for (const char* bad : {"", "-", ".", "1e3", "1.2.3", "12a", " 1", "0x10", "inf", "nan", "--1"}) {
    EXPECT_FALSE(parse_decimal(bad).has_value()) << bad;
  }
}

TEST(Decimal, FourPlaceValuesRoundTripExactly) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> units(-100000000, 100000000);
  for (int i = 0; i < 2000; ++i) {
    const double v = static_cast<double>(units(rng)) / 10000.0;
    const auto text = format_decimal(v);
    EXPECT_EQ(parse_decimal(text), v) << text;
    EXPECT_EQ(format_decimal(*parse_decimal(text)), text);
  }
}

}  // namespace
}  // namespace lfd
