#include "bgctl/mass_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bgctl/errors.hpp"
#include "bgctl/spectral.hpp"

namespace bgctl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_mode(int ell, int n, const char* who) {
  if (n < 1 || ell < n) throw std::invalid_argument(std::string(who) + ": needs ell >= n >= 1");
}

BigInt pow_int(BigInt base, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}
}  // namespace

BigInt factorial(int k) {
  if (k < 0) throw std::invalid_argument("factorial of a negative integer");
  BigInt out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  // exact at every step: out = binom(n - k + i, i)
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Rational c_constant(int ell, int n) {
  require_mode(ell, n, "c_constant");
  const BigInt num = BigInt(2 * ell + 1) * (n + 1) * factorial(ell - n) * factorial(ell + n);
  const BigInt f = factorial(ell + 1);
  const BigInt den = pow_int(2, 2 * n + 2) * f * f;
  return Rational(num, den);
}

std::vector<double> pole_masses(int n, int ell_max, double a) {
  if (!(a >= 0.0 && a <= kHalfPi + 1e-15)) throw std::invalid_argument("pole_masses: a must lie in [0, pi/2]");
  if (a >= kHalfPi) return std::vector<double>(static_cast<std::size_t>(ell_max - n + 1), 0.0);
  return localized_masses(n, ell_max, Region({{a, kHalfPi}}));
}

double MassBoundReport::ratio() const {
  return rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
}

namespace {
MassBoundReport make_report(int ell, int n, double a, double lhs) {
  MassBoundReport r;
  r.ell = ell;
  r.n = n;
  r.a = a;
  r.lhs = lhs;
  const double c = c_constant(ell, n).convert_to<double>();
  // same pole convention as pole_masses: a >= pi/2 (as a double) is the pole itself
  const double ca = a >= kHalfPi ? 0.0 : std::cos(a);
  r.rhs = c * std::pow(ca, 2 * n + 2);
  r.holds = r.lhs >= r.rhs - kMassBoundSlack;
  return r;
}
}  // namespace

MassBoundReport verify_mass_bound(ModeIndex m, double a) {
  require_mode(m.ell, m.n, "verify_mass_bound");
  return make_report(m.ell, m.n, a, pole_masses(m.n, m.ell, a).back());
}

std::vector<MassBoundReport> verify_mass_bound_grid(int ell_max, int n_max, const std::vector<double>& angles) {
  std::vector<MassBoundReport> out;
  for (int n = 1; n <= std::min(n_max, ell_max); ++n) {
    for (double a : angles) {
      const auto masses = pole_masses(n, ell_max, a);
      for (int ell = n; ell <= ell_max; ++ell) out.push_back(make_report(ell, n, a, masses[ell - n]));
    }
  }
  return out;
}

BigInt christoffel_sum(int ell, int n) {
  require_mode(ell, n, "christoffel_sum");
  BigInt acc = 0;
  for (int k = 0; k <= ell - n; ++k) {
    const BigInt b = binomial(k + n, k);
    acc += BigInt(2 * k + n + 1) * b * b;
  }
  return acc;
}

BigInt christoffel_closed(int ell, int n) {
  require_mode(ell, n, "christoffel_closed");
  const BigInt b = binomial(ell + 1, n + 1);
  return BigInt(n + 1) * b * b;
}

BigInt christoffel_kernel(int ell, int n) {
  const BigInt s = christoffel_sum(ell, n);
  if (s != christoffel_closed(ell, n))
    throw InvariantViolated("christoffel kernel (ell=" + std::to_string(ell) + ", n=" + std::to_string(n) + ")",
                            0.0);
  return s;
}

bool telescoping_step(int k, int n) {
  const BigInt b = binomial(k + n, k);
  const BigInt hi = binomial(k + n + 1, n + 1);
  const BigInt lo = binomial(k + n, n + 1);
  return BigInt(2 * k + n + 1) * b * b == BigInt(n + 1) * (hi * hi - lo * lo);
}

bool central_binomial_bound(int n) { return binomial(2 * n, n) * (2 * n + 1) >= pow_int(4, n); }

bool lambda_reindex(int n, int m) {
  const long long lhs = eigenvalue_exact(ModeIndex{n + m, n});
  return lhs == static_cast<long long>(n) + static_cast<long long>(2 * n + 1) * m + static_cast<long long>(m) * m;
}

MassConstantLowerBound verify_lemma_B1(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("verify_lemma_B1: needs n >= 1, m >= 0");
  MassConstantLowerBound r;
  r.n = n;
  r.m = m;
  r.lhs = c_constant(n + m, n);
  const BigInt den = BigInt(4) * (2 * n + 1) * BigInt(n + m + 1) * (n + m + 1) * pow_int(n + m, m);
  r.rhs = Rational(BigInt(2 * n + 2 * m + 1) * (n + 1), den);
  r.holds = r.lhs >= r.rhs;
  return r;
}

CombinatorialSummary combinatorial_suite(int n_max, int m_max) {
  CombinatorialSummary s;
  auto record = [&s](bool ok, const std::string& what) {
    ++s.checked;
    if (!ok) {
      ++s.failures;
      s.failed.push_back(what);
    }
  };
  for (int n = 1; n <= n_max; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    record(central_binomial_bound(n), "central_binomial " + tag);
    // running Christoffel sum; each prefix must match the closed form
    BigInt acc = 0;
    for (int m = 0; m <= m_max; ++m) {
      const int ell = n + m;
      const std::string t = tag + " m=" + std::to_string(m);
      const BigInt b = binomial(m + n, m);
      acc += BigInt(2 * m + n + 1) * b * b;
      record(acc == christoffel_closed(ell, n), "christoffel " + t);
      record(telescoping_step(m, n), "telescoping " + t);
      record(verify_lemma_B1(n, m).holds, "mass_constant_lower_bound " + t);
      record(lambda_reindex(n, m), "lambda_reindex " + t);
    }
  }
  return s;
}

SSeriesReport s_series(int n, double T, double eps, double a, int m_max) {
  if (n < 1) throw std::invalid_argument("s_series: n must be >= 1");
  if (!(eps > 0.0) || !(T > eps)) throw std::invalid_argument("s_series: needs T > eps > 0");
  if (!(a >= 0.0 && a < kHalfPi)) throw std::invalid_argument("s_series: a must lie in [0, pi/2)");
  if (m_max < 1) throw std::invalid_argument("s_series: m_max must be >= 1");
  SSeriesReport r;
  r.n = n;
  r.T = T;
  r.eps = eps;
  r.beta = T - eps;
  r.a = a;
  r.terms = m_max;
  const auto masses = pole_masses(n, n + m_max - 1, a);
  const double cpow = std::pow(std::cos(a), 2 * n + 2);
  double s = 0.0, sm = 0.0;
  double last = 0.0, last_m = 0.0;
  for (int m = 0; m < m_max; ++m) {
    const double lam = eigenvalue(ModeIndex{n + m, n});
    const double damp = std::exp(-2.0 * r.beta * lam);
    last = damp / masses[m];
    last_m = damp / (c_constant(n + m, n).convert_to<double>() * cpow);
    s += last;
    sm += last_m;
    r.partial_sums.push_back(s);
    r.majorant_partial_sums.push_back(sm);
  }
  r.converged = r.beta > 0.0 && std::isfinite(s) && std::isfinite(sm) && last <= kSSeriesTolerance * s &&
                last_m <= kSSeriesTolerance * sm;
  return r;
}

}  // namespace bgctl
