#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bgctl/mass_bounds.hpp"
#include "bgctl/quadrature.hpp"
#include "oracles.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

TEST(Combinatorics, FactorialBinomial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
  EXPECT_EQ(binomial(4, 7), 0);
}

TEST(CConstant, Examples) {
  EXPECT_EQ(c_constant(1, 1), Rational(3, 16));
  EXPECT_EQ(c_constant(2, 1), Rational(5, 48));
  for (int n = 1; n <= 12; ++n) {
    const Rational ref = Rational((2 * n + 1) * (n + 1)) / Rational(BigInt(1) << (2 * n + 2)) *
                         Rational(oracle::fact(2 * n), oracle::fact(n + 1) * oracle::fact(n + 1));
    EXPECT_EQ(c_constant(n, n), ref);
  }
  EXPECT_THROW(c_constant(1, 2), std::invalid_argument);
}

TEST(MassBound, PoleAngleIsDegenerate) {
  const auto r = verify_mass_bound({3, 2}, kPi / 2);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(MassBound, EquatorGivesHalf) {
  const auto r = verify_mass_bound({1, 1}, 0.0);
  EXPECT_NEAR(r.lhs, 0.5, 1e-15);
  EXPECT_NEAR(r.rhs, 3.0 / 16.0, 1e-16);
  EXPECT_TRUE(r.holds);
}

TEST(MassBound, GridHolds) {
  const std::vector<double> angles{0.0, kPi / 6, kPi / 4, kPi / 3, 1.4};
  const auto rows = verify_mass_bound_grid(30, 15, angles);
  EXPECT_EQ(rows.size(), angles.size() * [] {
    std::size_t c = 0;
    for (int n = 1; n <= 15; ++n) c += 30 - n + 1;
    return c;
  }());
  for (const auto& r : rows) EXPECT_TRUE(r.holds) << r.ell << ' ' << r.n << ' ' << r.a;
}

TEST(MassBound, MassesAgreeWithOracleQuadrature) {
  std::vector<double> t, w;
  for (double a : {0.2, kPi / 3, 1.3}) {
    oracle::gauss_legendre_ref(60, std::sin(a), 1.0, t, w);
    const auto m = pole_masses(2, 20, a);
    for (int ell = 2; ell <= 20; ++ell) {
      double ref = 0.0;
      for (std::size_t q = 0; q < t.size(); ++q) {
        const double v = oracle::eigenfunction(ell, 2, std::asin(t[q]));
        ref += w[q] * v * v;
      }
      EXPECT_NEAR(m[ell - 2], ref, 1e-13);
    }
  }
}

TEST(MassBound, MassNonIncreasingInAngle) {
  const auto lo = pole_masses(3, 25, 0.5);
  const auto hi = pole_masses(3, 25, 0.9);
  for (std::size_t i = 0; i < lo.size(); ++i) EXPECT_GE(lo[i], hi[i]);
}

TEST(Christoffel, Examples) {
  EXPECT_EQ(christoffel_kernel(2, 1), 18);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(christoffel_kernel(n, n), n + 1);
  EXPECT_THROW(christoffel_kernel(0, 0), std::invalid_argument);
}

TEST(Christoffel, BruteForceSum) {
  for (int n = 1; n <= 8; ++n)
    for (int ell = n; ell <= n + 15; ++ell) {
      oracle::cpp_int s = 0;
      for (int k = 0; k <= ell - n; ++k) s += (2 * k + n + 1) * oracle::binom(k + n, k) * oracle::binom(k + n, k);
      EXPECT_EQ(christoffel_sum(ell, n), BigInt(s));
      EXPECT_EQ(christoffel_closed(ell, n), BigInt(s));
    }
}

TEST(Christoffel, KernelMatchesJacobiAtZero) {
  // sum_k p_k(0)^2 with p_k from the floating-point Jacobi evaluator
  for (int n = 1; n <= 4; ++n)
    for (int ell = n; ell <= n + 6; ++ell) {
      double s = 0.0;
      for (int k = 0; k <= ell - n; ++k) s += std::pow(shifted_jacobi(k, n, 0.0), 2);
      const double ref = static_cast<double>(christoffel_kernel(ell, n));
      EXPECT_NEAR(s, ref, 1e-11 * ref);
    }
}

TEST(ExactIdentities, TelescopingCentralBinomialReindex) {
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= 40; ++k) EXPECT_TRUE(telescoping_step(k, n));
  for (int n = 0; n <= 30; ++n) EXPECT_TRUE(central_binomial_bound(n));
  for (int n = 0; n <= 50; ++n)
    for (int m = 0; m <= 50; ++m) EXPECT_TRUE(lambda_reindex(n, m));
}

TEST(MassConstantLowerBound, Examples) {
  const auto r11 = verify_lemma_B1(1, 1);
  EXPECT_EQ(r11.lhs, Rational(5, 48));
  EXPECT_EQ(1 / r11.lhs, Rational(48, 5));
  EXPECT_EQ(1 / r11.rhs, Rational(108, 5));
  EXPECT_TRUE(r11.holds);
  const auto r10 = verify_lemma_B1(1, 0);
  EXPECT_EQ(r10.lhs, Rational(3, 16));
  EXPECT_EQ(r10.rhs, Rational(1, 8));
  EXPECT_TRUE(r10.holds);
}

TEST(MassConstantLowerBound, FullSuite) {
  const auto s = combinatorial_suite(30, 40);
  EXPECT_EQ(s.failures, 0);
  EXPECT_GT(s.checked, 31 * 41);
  EXPECT_TRUE(s.failed.empty());
}

TEST(SSeries, LongHorizonConvergesAndMajorantDominates) {
  for (int n = 1; n <= 12; ++n) {
    const auto r = s_series(n, 1.1, 0.1, kPi / 3);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.beta, 1.0, 1e-15);
    EXPECT_GT(r.value(), 0.0);
    // C cos^{2n+2} a lower-bounds each mass, so the majorant series is larger
    EXPECT_GE(r.majorant(), r.value() * (1 - 1e-12));
  }
}

TEST(SSeries, PartialSumsIncrease) {
  const auto r = s_series(3, 0.5, 0.1, kPi / 4, 30);
  ASSERT_EQ(r.partial_sums.size(), 30u);
  for (std::size_t i = 1; i < r.partial_sums.size(); ++i) EXPECT_GE(r.partial_sums[i], r.partial_sums[i - 1]);
  EXPECT_THROW(s_series(1, 0.3, 0.4, kPi / 3), std::invalid_argument);
}
