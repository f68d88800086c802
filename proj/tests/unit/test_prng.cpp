#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "dispersion/prng.hpp"

namespace dispersion {
namespace {

// Reference outputs of SplitMix64 seeded with 1234567 (published test
// vector of the reference C implementation).
TEST(SplitMix64, ReferenceStream) {
  SplitMix64 g(1234567);
  const std::array<std::uint64_t, 5> expected{6457827717110365317ULL, 3203168211198807973ULL,
                                              9817491932198370423ULL, 4593380528125082431ULL,
                                              16408922859458223821ULL};
  for (auto e : expected) EXPECT_EQ(g.next(), e);
}

TEST(SplitMix64, BelowIsInRangeAndRoughlyUniform) {
  SplitMix64 g(5);
  std::array<int, 7> counts{};
  constexpr int kDraws = 70000;
  for (int i = 0; i < kDraws; ++i) {
    const auto v = g.below(7);
    ASSERT_LT(v, 7U);
    ++counts[v];
  }
  const double expect = kDraws / 7.0;
  const double sigma = std::sqrt(kDraws * (1.0 / 7) * (6.0 / 7));
  for (int c : counts) EXPECT_LT(std::abs(c - expect), 4 * sigma);
  EXPECT_EQ(SplitMix64(9).below(1), 0U);
}

TEST(SplitMix64, SplitIsDeterministic) {
  SplitMix64 a(77);
  SplitMix64 b(77);
  auto ca = a.split();
  auto cb = b.split();
  EXPECT_EQ(ca.next(), cb.next());
  EXPECT_EQ(a.next(), b.next());
}

}  // namespace
}  // namespace dispersion
