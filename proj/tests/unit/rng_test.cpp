#include "superres/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using superres::RngStream;

// Known-answer vectors of the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = RngStream::philox({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (RngStream::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = RngStream::philox({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (RngStream::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = RngStream::philox({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (RngStream::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStream, StreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    same_b += x == b();
    same_c += x == c();
  }
  EXPECT_LT(same_b, 3);
  EXPECT_LT(same_c, 3);
}

TEST(RngStream, UniformInUnitInterval) {
  RngStream r(1, 0);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 3 * 0.2887 / std::sqrt(100000.0));
}

TEST(RngStream, HighStreamBitsMatter) {
  RngStream a(5, 1ull << 56), b(5, 0);
  EXPECT_NE(a(), b());
}
