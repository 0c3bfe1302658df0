#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bgctl/sweep.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

TEST(ParseGrid, RangeAndScalar) {
  const auto g = parse_grid("0.4:1.4:0.05");
  ASSERT_EQ(g.size(), 21u);
  EXPECT_DOUBLE_EQ(g.front(), 0.4);
  EXPECT_NEAR(g.back(), 1.4, 1e-15);
  EXPECT_EQ(parse_grid("1.2"), std::vector<double>{1.2});
  EXPECT_EQ(parse_grid("0.5:0.5:0.1").size(), 1u);
}

TEST(ParseGrid, Rejects) {
  EXPECT_THROW(parse_grid("abc"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:2"), std::invalid_argument);
  EXPECT_THROW(parse_grid("2:1:0.1"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:2:0"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:2:0.1x"), std::invalid_argument);
}

TEST(ZeroCrossing, LinearInterpolation) {
  EXPECT_NEAR(*zero_crossing({0.0, 1.0, 2.0}, {2.0, 1.0, -1.0}), 1.5, 1e-15);
  EXPECT_FALSE(zero_crossing({0.0, 1.0}, {-1.0, -2.0}).has_value());
  EXPECT_NEAR(*zero_crossing({0.0, 1.0}, {1.0, 0.0}), 1.0, 1e-15);
}

TEST(Sweep, RowsAndTheory) {
  const auto rep = sweep_minimal_time(kPi / 3, {0.6, 1.0}, 5, 6);
  EXPECT_EQ(rep.points.size(), 10u);
  EXPECT_EQ(rep.fits.size(), 2u);
  EXPECT_NEAR(rep.theoretical_T_min, std::log(2.0), 1e-15);
  for (const auto& p : rep.points) {
    EXPECT_TRUE(p.ok());
    EXPECT_GT(p.cost, 0.0);
    EXPECT_LE(p.residual, 1e-10);
  }
  EXPECT_EQ(rep.points[0].T, 0.6);
  EXPECT_EQ(rep.points[5].n, 1);
}

TEST(Sweep, SlopeSignsAroundThreshold) {
  const auto rep = sweep_minimal_time(kPi / 3, {0.4, 1.2}, 10, 10);
  // below ln 2 the cost grows with n, above it decays
  EXPECT_NEAR(rep.fits[0].slope, std::log(2.0) - 0.4, 0.15);
  EXPECT_GT(rep.fits[0].rate, 0.0);
  EXPECT_LT(rep.fits[1].slope, 0.0);
  EXPECT_NEAR(rep.fits[1].rate, std::log(2.0) - 1.2, 0.15);
}

TEST(Sweep, SmallAngleHasNoThreshold) {
  const auto rep = sweep_minimal_time(0.05, {0.3, 0.6, 1.0}, 8, 8);
  for (const auto& f : rep.fits) {
    EXPECT_TRUE(f.ok);
    EXPECT_LT(f.slope, 0.0);
  }
  EXPECT_LT(rep.fits.back().rate, 0.0);
  EXPECT_FALSE(rep.T_hat_linear.has_value());
  EXPECT_FALSE(rep.T_hat.has_value());
}

TEST(Sweep, FailuresRecordedPerPoint) {
  SweepOptions o;
  o.precision = Precision::Double;
  const auto rep = sweep_minimal_time(kPi / 3, {0.2}, 4, 14, o);
  bool any = false;
  for (const auto& p : rep.points) any = any || !p.ok();
  EXPECT_TRUE(any);
}

TEST(Sweep, Preconditions) {
  EXPECT_THROW(sweep_minimal_time(0.0, {1.0}, 5, 5), std::invalid_argument);
  EXPECT_THROW(sweep_minimal_time(1.0, {1.0, 0.5}, 5, 5), std::invalid_argument);
}
