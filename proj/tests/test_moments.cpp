#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bgctl/legendre.hpp"
#include "bgctl/errors.hpp"
#include "bgctl/moments.hpp"
#include "oracles.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

namespace {
const Crown kCrown = Crown::make(kPi / 3, kPi / 2);

ExponentialFamily family(std::vector<double> lambdas, double T) {
  ExponentialFamily f;
  f.lambdas = std::move(lambdas);
  f.T = T;
  return f;
}
}  // namespace

TEST(Gram, SingleEntryClosedForm) {
  const auto g = gram_matrix(family({1.0}, 1.0));
  EXPECT_NEAR(g(0, 0), (1 - std::exp(-2.0)) / 2, 1e-15);
  EXPECT_NEAR(g(0, 0), 0.432332, 1e-6);
}

TEST(Gram, LongHorizonLimit) {
  const auto g = gram_matrix(family({2.0, 5.0}, 40.0));
  EXPECT_NEAR(g(0, 1), 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(g(1, 1), 1.0 / 10.0, 1e-15);
}

TEST(Gram, ExtendedAgreesWithDoubleAndQuadrature) {
  const auto fam = ExponentialFamily::for_mode(2, 5, 0.9);
  const auto gd = gram_matrix(fam);
  const auto ge = to_eigen(gram_matrix_ext(fam));
  std::vector<double> t, w;
  oracle::gauss_legendre_ref(80, 0.0, 0.9, t, w);
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      double ref = 0.0;
      for (std::size_t q = 0; q < t.size(); ++q)
        ref += w[q] * std::exp(-(fam.lambdas[j] + fam.lambdas[k]) * (0.9 - t[q]));
      EXPECT_NEAR(gd(j, k), ref, 1e-14);
      EXPECT_NEAR(ge(j, k), ref, 1e-14);
    }
}

TEST(Gram, QuietWindowScalesByExponential) {
  auto fam = ExponentialFamily::for_mode(1, 3, 1.0, 0.2);
  const auto g = gram_matrix(fam);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const double s = fam.lambdas[j] + fam.lambdas[k];
      EXPECT_NEAR(g(j, k), std::exp(-s * 0.2) * (1 - std::exp(-s * 0.8)) / s, 1e-15);
    }
}

TEST(ExpPairing, ClosedForm) {
  const double a = 3.0, b = 7.0, T = 1.2, t = 0.8;
  std::vector<double> s, w;
  oracle::gauss_legendre_ref(40, 0.0, t, s, w);
  double ref = 0.0;
  for (std::size_t q = 0; q < s.size(); ++q) ref += w[q] * std::exp(-a * (T - s[q])) * std::exp(-b * (t - s[q]));
  EXPECT_NEAR(static_cast<double>(exp_pairing(a, b, T, t)), ref, 1e-15);
}

TEST(Biorthogonal, OneByOneInverse) {
  const double lam = 3.0, T = 0.7;
  const auto bf = biorthogonal(family({lam}, T));
  EXPECT_NEAR(static_cast<double>(bf.dual(0, 0)), 2 * lam / (1 - std::exp(-2 * lam * T)), 1e-13);
  EXPECT_NEAR(bf.q_norms_squared()[0], 2 * lam / (1 - std::exp(-2 * lam * T)), 1e-13);
}

TEST(Biorthogonal, ResidualSmallBothPrecisions) {
  const auto fam = ExponentialFamily::for_mode(1, 6, 1.0);
  for (auto p : {Precision::Double, Precision::Extended}) {
    const auto bf = biorthogonal(fam, {p, 0.0});
    EXPECT_LE(bf.residual, 1e-10);
    EXPECT_EQ(bf.precision, p);
  }
}

TEST(Biorthogonal, MomentsByQuadrature) {
  const auto fam = ExponentialFamily::for_mode(2, 5, 1.0);
  const auto bf = biorthogonal(fam);
  std::vector<double> t, w;
  oracle::gauss_legendre_ref(120, 0.0, 1.0, t, w);
  for (int k = 0; k < 5; ++k)
    for (int l = 0; l < 5; ++l) {
      long double acc = 0;
      for (std::size_t q = 0; q < t.size(); ++q)
        acc += w[q] * static_cast<long double>(bf.q_value(k, t[q])) * std::exp(-fam.lambdas[l] * (1.0 - t[q]));
      EXPECT_NEAR(static_cast<double>(acc), k == l ? 1.0 : 0.0, 1e-9);
    }
}

TEST(Biorthogonal, QuietWindowVanishesAtTheEnd) {
  const auto fam = ExponentialFamily::for_mode(1, 8, 1.0, 0.15);
  const auto bf = biorthogonal(fam);
  EXPECT_LE(bf.residual, 1e-10);
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(bf.q_value(k, 0.9), 0);
    EXPECT_NE(bf.q_value(k, 0.5), 0);
  }
}

TEST(Biorthogonal, CeilingRaisesTypedError) {
  const auto fam = ExponentialFamily::for_mode(1, 14, 0.5);
  EXPECT_THROW(biorthogonal(fam, {Precision::Double, 0.0}), IllConditioned);
  try {
    biorthogonal(fam, {Precision::Double, 0.0});
  } catch (const IllConditioned& e) {
    EXPECT_GT(e.cond(), 1e12);
  }
}

TEST(Biorthogonal, QNormGrowthFitsExponentialBound) {
  // ln ||q_l|| <= ln K + eps lambda_l with K fitted on the family
  const auto bf = biorthogonal(ExponentialFamily::for_mode(1, 10, 1.0));
  const auto q2 = bf.q_norms_squared();
  const double eps = 0.05;
  double lnK = -INFINITY;
  for (int l = 0; l < 10; ++l) lnK = std::max(lnK, 0.5 * std::log(q2[l]) - eps * bf.family.lambdas[l]);
  for (int l = 0; l < 10; ++l) EXPECT_LE(0.5 * std::log(q2[l]), lnK + eps * bf.family.lambdas[l] + 1e-12);
  EXPECT_TRUE(std::isfinite(lnK));
}

TEST(QuietWindow, AutomaticValue) {
  SynthesisOptions o;
  const double lam = eigenvalue({1 + 8, 1});
  EXPECT_NEAR(resolve_quiet_window(o, 1, 8, 1.0), 20.0 / lam, 1e-15);
  EXPECT_NEAR(resolve_quiet_window(o, 1, 1, 1.0), kMaxQuietFraction, 1e-15);
  o.quiet_window = 0.0;
  EXPECT_EQ(resolve_quiet_window(o, 1, 8, 1.0), 0.0);
}

TEST(Synthesize, SingleModeAlpha) {
  for (int n : {1, 3, 6}) {
    const auto f0 = SpectralField::single_mode(n, n, 6);
    const auto plan = synthesize(f0, kCrown, 1.0, 6);
    EXPECT_NEAR(plan.alphas[0], -std::exp(-n * 1.0) / plan.masses[0], 1e-15);
    for (int l = 1; l < 6; ++l) EXPECT_EQ(plan.alphas[l], 0.0);
    EXPECT_LE(plan.moment_residual, 1e-8);
  }
}

TEST(Synthesize, MomentsAndLeakage) {
  for (int n = 1; n <= 12; ++n) {
    auto f0 = SpectralField::zero(n, 8);
    for (int i = 0; i < 8; ++i) f0.coeffs[i] = std::cos(1.0 + i);
    const auto plan = synthesize(f0, kCrown, 1.0, 8);
    EXPECT_LE(plan.family.residual, 1e-10);
    EXPECT_LE(plan.moment_residual, 1e-8 * f0.norm());
    EXPECT_LE(plan.leakage, 1e-6 * f0.norm());
    EXPECT_EQ(plan.terminal.size(), 16u);
  }
}

TEST(Synthesize, LinearInData) {
  auto f0 = SpectralField::zero(2, 6);
  for (int i = 0; i < 6; ++i) f0.coeffs[i] = 0.5 - 0.1 * i;
  auto g0 = f0;
  for (auto& c : g0.coeffs) c *= -3.0;
  const auto p = synthesize(f0, kCrown, 1.0, 6);
  const auto q = synthesize(g0, kCrown, 1.0, 6);
  for (int l = 0; l < 6; ++l) EXPECT_NEAR(q.alphas[l], -3.0 * p.alphas[l], 1e-15 * std::abs(p.alphas[l]) * 4);
  EXPECT_NEAR(q.cost, 3.0 * p.cost, 1e-12 * p.cost);
}

TEST(Synthesize, CostMatchesQuadratureOfControl) {
  auto f0 = SpectralField::zero(1, 4);
  f0.coeffs = {1.0, 0.5, -0.25, 0.1};
  SynthesisOptions o;
  o.quiet_window = 0.0;
  const auto plan = synthesize(f0, kCrown, 1.0, 4, o);
  // ||u||^2 = int_0^T sum_kl a_k(t) a_l(t) M_kl dt
  const auto M = crown_mass_matrix(1, 4, kCrown);
  std::vector<double> t, w;
  oracle::gauss_legendre_ref(120, 0.0, 1.0, t, w);
  long double acc = 0;
  for (std::size_t q = 0; q < t.size(); ++q)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        acc += w[q] * plan.alphas[k] * plan.alphas[l] * M(k, l) *
               static_cast<long double>(plan.family.q_value(k, t[q]) * plan.family.q_value(l, t[q]));
  EXPECT_NEAR(plan.cost, std::sqrt(static_cast<double>(acc)), 1e-8 * plan.cost);
}

TEST(Synthesize, CostDecreasesWithHorizon) {
  const auto f0 = SpectralField::single_mode(3, 3, 10);
  double prev = INFINITY;
  for (double T : {0.8, 1.0, 1.5, 2.0}) {
    const double c = synthesize(f0, kCrown, T, 10).cost;
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(Synthesize, RequiresPoleTouchingCrown) {
  EXPECT_THROW(synthesize(SpectralField::single_mode(1, 1, 4), Crown::make(0.5, 1.2), 1.0, 4), std::invalid_argument);
}

TEST(Synthesize, ZeroOrderMode) {
  auto f0 = SpectralField::zero(0, 6);
  f0.coeffs = {1.0, 0.3, 0.0, -0.2, 0.0, 0.1};
  const auto plan = synthesize(f0, kCrown, 1.0, 6);
  EXPECT_LE(plan.moment_residual, 1e-8 * f0.norm());
}

TEST(Synthesize, StripRegion) {
  const auto plan = synthesize_on_region(SpectralField::single_mode(2, 2, 8), Region::symmetric_strip(1.3), 1.2, 8);
  EXPECT_FALSE(plan.crown.has_value());
  EXPECT_LE(plan.moment_residual, 1e-8);
  EXPECT_EQ(plan.value(0.5, 1.4), 0.0);
}

TEST(GapAudit, Examples) {
  const auto r1 = gap_audit(ExponentialFamily::for_mode(1, 20, 1.0), {0.1});
  EXPECT_EQ(r1.first, 1);
  EXPECT_EQ(r1.min_gap, 4);
  EXPECT_TRUE(r1.gaps_ok);
  ASSERT_EQ(r1.tail.size(), 1u);
  EXPECT_EQ(r1.tail[0].n_eta, 12);
  EXPECT_TRUE(r1.tail[0].certified);
  EXPECT_TRUE(r1.ok());
  const auto r7 = gap_audit(ExponentialFamily::for_mode(7, 5, 1.0));
  EXPECT_EQ(r7.first, 7);
  EXPECT_TRUE(r7.ok());
}

TEST(GapAudit, TailOracle) {
  // sum_{j >= 12} 1/(j-1)^2 = pi^2/6 - sum_{k <= 10} 1/k^2
  double head = 0.0;
  for (int k = 1; k <= 10; ++k) head += 1.0 / (k * k);
  EXPECT_LT(kPi * kPi / 6 - head, 0.1);
}

// 0.188679 is not exactly T - (T - 0.188679) in binary; the dual must follow
// the window that pairing and q_value actually integrate over
TEST(Biorthogonal, PairingWithInexactQuietWindow) {
  const auto fam = ExponentialFamily::for_mode(2, 8, 1.0, 0.188679);
  const auto bio = biorthogonal(fam);
  for (int l = 0; l < 8; ++l) {
    const auto p = bio.pairing(fam.lambdas[l]);
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(static_cast<double>(p[k]), k == l ? 1.0 : 0.0, 1e-12) << k << ' ' << l;
  }
}
