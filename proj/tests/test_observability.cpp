#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bgctl/errors.hpp"
#include "bgctl/moments.hpp"
#include "bgctl/observability.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

TEST(Observability, SingleModeFullInterval) {
  for (int n : {1, 2, 5}) {
    const double T = 0.7;
    const double ref = std::exp(-2 * n * T) * 2 * n / (1 - std::exp(-2 * n * T));
    EXPECT_NEAR(observability_constant(n, n, Region::full(), T), ref, 1e-12 * ref);
  }
}

TEST(Observability, SingleModeOnCrown) {
  const Region r = Region::from_crown(Crown::make(kPi / 3, kPi / 2));
  const int n = 2;
  const double T = 0.5;
  const double mass = localized_masses(n, n, r)[0];
  const double ref = std::exp(-2 * n * T) * 2 * n / ((1 - std::exp(-2 * n * T)) * mass);
  EXPECT_NEAR(observability_constant(n, n, r, T), ref, 1e-11 * ref);
}

TEST(Observability, ShrinkingRegionCannotDecreaseConstant) {
  const double T = 0.4;
  for (int n : {1, 4}) {
    const double full = observability_constant(n, n + 6, Region::full(), T);
    const double wide = observability_constant(n, n + 6, Region::from_crown(Crown::make(0.5, kPi / 2)), T);
    const double narrow = observability_constant(n, n + 6, Region::from_crown(Crown::make(0.9, kPi / 2)), T);
    EXPECT_LE(full, wide * (1 + 1e-10));
    EXPECT_LE(wide, narrow * (1 + 1e-10));
  }
}

TEST(Observability, NonIncreasingInT) {
  const Region r = Region::symmetric_strip(kPi / 4);
  double prev = INFINITY;
  for (double T : {0.1, 0.25, 0.5, 1.0}) {
    const double c = observability_constant(3, 13, r, T);
    EXPECT_LE(c, prev * (1 + 1e-10));
    prev = c;
  }
}

// Any coefficient vector gives a lower bound c^T A c / c^T B c <= C, and the
// quotient is attained up to rounding by the top generalized eigenvector.
TEST(Observability, RayleighQuotientsStayBelowConstant) {
  const int n = 2, ell_max = 8;
  const double T = 0.3;
  const Region r = Region::from_crown(Crown::make(kPi / 3, kPi / 2));
  const double C = observability_constant(n, ell_max, r, T);
  const int K = ell_max - n + 1;
  const auto fam = ExponentialFamily::for_mode(n, K, T);
  const auto G = gram_matrix(fam);
  const auto M = region_mass_matrix(n, ell_max, r);
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  double best = 0.0;
  for (int s = 0; s < 500; ++s) {
    Eigen::VectorXd c(K);
    for (int i = 0; i < K; ++i) c(i) = nd(gen);
    double a = 0.0, b = 0.0;
    for (int i = 0; i < K; ++i) {
      a += std::exp(-2 * fam.lambdas[i] * T) * c(i) * c(i);
      for (int j = 0; j < K; ++j) b += c(i) * c(j) * G(i, j) * M(i, j);
    }
    best = std::max(best, a / b);
  }
  EXPECT_LE(best, C * (1 + 1e-8));
  EXPECT_GT(best, 0.0);
}

TEST(Observability, StripBoundedAcrossOrders) {
  // bounded in n; the precise spread is an acceptance measurement
  const Region r = Region::symmetric_strip(kPi / 4);
  for (int n = 1; n <= 12; ++n) {
    const auto res = observability(n, n + 10, r, 0.25);
    EXPECT_TRUE(std::isfinite(res.constant));
    EXPECT_GT(res.constant, 0.0);
    EXPECT_LT(res.constant, 1e4);
  }
}

TEST(Observability, RejectsMoreThanTwoIntervals) {
  const Region r({{-1.0, -0.8}, {-0.2, 0.2}, {0.8, 1.0}});
  EXPECT_THROW(observability(1, 4, r, 0.5), std::invalid_argument);
}

TEST(Dissipation, BottomModeIsExact) {
  for (int n = 1; n <= 12; ++n) {
    const auto r = dissipation_audit(n, n + 8, 0.2, 0.5);
    EXPECT_NEAR(r.bottom_ratio, std::exp(-n * 0.3), 1e-14);
    EXPECT_TRUE(r.strict_above_bottom);
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.random_samples, 100);
  }
}

TEST(Dissipation, RandomStatesBelowBound) {
  const auto r = dissipation_audit(5, 20, 0.7, 1.0, 99, 100);
  EXPECT_LE(r.worst_random_ratio, std::exp(-1.5));
  EXPECT_NEAR(r.bound, std::exp(-1.5), 1e-15);
}

TEST(Dissipation, SeedDeterminesResult) {
  const auto a = dissipation_audit(3, 10, 0.1, 0.6, 42);
  const auto b = dissipation_audit(3, 10, 0.1, 0.6, 42);
  EXPECT_EQ(a.worst_random_ratio, b.worst_random_ratio);
  EXPECT_THROW(dissipation_audit(3, 10, 0.6, 0.6), std::invalid_argument);
}
