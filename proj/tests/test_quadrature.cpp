#include <cmath>

#include <gtest/gtest.h>

#include "bgctl/errors.hpp"
#include "bgctl/quadrature.hpp"
#include "oracles.hpp"

using namespace bgctl;

TEST(GaussLegendre, Midpoint) {
  const auto r = gauss_legendre(-1.0, 1.0, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(r.weights[0], 2.0);
  EXPECT_EQ(r.exact_degree, 1);
}

TEST(GaussLegendre, Monomials) {
  EXPECT_NEAR(gauss_legendre(-1.0, 1.0, 5).integrate([](double t) { return std::pow(t, 8); }), 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(gauss_legendre(0.0, 0.5, 10).integrate([](double t) { return t * t * t; }), 0.015625, 1e-14);
}

TEST(GaussLegendre, ExactUpToDegree) {
  for (int N : {2, 7, 20, 64}) {
    const auto r = gauss_legendre(-0.3, 0.9, N);
    for (int d = 0; d <= 2 * N - 1; d += 3) {
      const double ref = (std::pow(0.9, d + 1) - std::pow(-0.3, d + 1)) / (d + 1);
      EXPECT_NEAR(r.integrate([d](double t) { return std::pow(t, d); }), ref, 1e-14) << N << ' ' << d;
    }
  }
}

TEST(GaussLegendre, MatchesReferenceRule) {
  for (int N : {3, 16, 101, 400}) {
    const auto r = gauss_legendre(-1.0, 1.0, N);
    std::vector<double> x, w;
    oracle::gauss_legendre_ref(N, -1.0, 1.0, x, w);
    for (int i = 0; i < N; ++i) {
      EXPECT_NEAR(r.nodes[i], x[i], 1e-15);
      EXPECT_NEAR(r.weights[i], w[i], 1e-15);
    }
  }
}

TEST(GaussLegendre, NodesIncreasingWeightsPositive) {
  const auto r = gauss_legendre(0.2, 0.8, 33);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.weights[i], 0.0);
    if (i) EXPECT_GT(r.nodes[i], r.nodes[i - 1]);
    EXPECT_GT(r.nodes[i], 0.2);
    EXPECT_LT(r.nodes[i], 0.8);
    sum += r.weights[i];
  }
  EXPECT_NEAR(sum, 0.6, 1e-15);
}

TEST(GaussLegendre, RejectsBadInput) {
  EXPECT_THROW(gauss_legendre(-1.0, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(gauss_legendre(1.0, -1.0, 4), std::invalid_argument);
}

TEST(GaussLegendre, PointsForDegree) {
  EXPECT_EQ(gauss_points_for_degree(0), 1);
  EXPECT_EQ(gauss_points_for_degree(1), 1);
  EXPECT_EQ(gauss_points_for_degree(2), 2);
  EXPECT_EQ(gauss_points_for_degree(9), 5);
}
