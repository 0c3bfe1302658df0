#pragma once

// Localized L^2 mass of the eigenfunctions near the pole and the exact
// combinatorics behind its lower bound
//   int_a^{pi/2} |v_{ell,n}|^2 cos x dx >= C_{ell,n} cos^{2n+2} a,
//   C_{ell,n} = (2ell+1)(n+1)/2^{2n+2} (ell-n)!(ell+n)!/((ell+1)!)^2.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bgctl/legendre.hpp"

namespace bgctl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int k);
BigInt binomial(int n, int k);

// Exact C_{ell,n}; requires ell >= n >= 1.
Rational c_constant(int ell, int n);

// int_a^{pi/2} |v_{ell,n}|^2 cos x dx for ell = n .. ell_max (exact-degree
// Gauss-Legendre in t = sin x). Zero when a = pi/2.
std::vector<double> pole_masses(int n, int ell_max, double a);

struct MassBoundReport {
  int ell = 0;
  int n = 0;
  double a = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;

  // lhs / rhs, infinity when rhs = 0.
  double ratio() const;
};

inline constexpr double kMassBoundSlack = 1e-13;

MassBoundReport verify_mass_bound(ModeIndex m, double a);

// Every (ell, n, a) with 1 <= n <= n_max, n <= ell <= ell_max.
std::vector<MassBoundReport> verify_mass_bound_grid(int ell_max, int n_max, const std::vector<double>& angles);

// sum_{k=0}^{ell-n} (2k+n+1) binom(k+n,k)^2, i.e. sum p_k(0)^2.
BigInt christoffel_sum(int ell, int n);
// (n+1) binom(ell+1, n+1)^2.
BigInt christoffel_closed(int ell, int n);
// Both sides; throws InvariantViolated if they disagree.
BigInt christoffel_kernel(int ell, int n);

// (2k+n+1) binom(k+n,k)^2 == (n+1) [binom(k+n+1,n+1)^2 - binom(k+n,n+1)^2].
bool telescoping_step(int k, int n);

// binom(2n, n) >= 4^n / (2n+1).
bool central_binomial_bound(int n);

// lambda_{n+m,n} == n + (2n+1) m + m^2.
bool lambda_reindex(int n, int m);

struct MassConstantLowerBound {
  int n = 0;
  int m = 0;
  Rational lhs;  // C_{n+m,n}
  Rational rhs;  // (2n+2m+1)(n+1) / (4(2n+1)(n+m+1)^2 (n+m)^m)
  bool holds = false;
};

// C_{n+m,n} >= rhs, exactly in rationals.
MassConstantLowerBound verify_lemma_B1(int n, int m);

struct CombinatorialSummary {
  int checked = 0;
  int failures = 0;
  std::vector<std::string> failed;  // human-readable tuples
};

// Christoffel identity, telescoping steps, central binomial bound, the
// lower bound on C_{n+m,n} and the eigenvalue reindexing for 1 <= n <= n_max,
// 0 <= m <= m_max.
CombinatorialSummary combinatorial_suite(int n_max, int m_max);

struct SSeriesReport {
  int n = 0;
  double T = 0.0;
  double eps = 0.0;
  double beta = 0.0;  // T - eps
  double a = 0.0;
  int terms = 0;
  std::vector<double> partial_sums;           // true masses
  std::vector<double> majorant_partial_sums;  // C_{ell,n} cos^{2n+2} a in place of the masses
  bool converged = false;                     // both tails settled to kSSeriesTolerance

  double value() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
  double majorant() const { return majorant_partial_sums.empty() ? 0.0 : majorant_partial_sums.back(); }
};

inline constexpr double kSSeriesTolerance = 1e-10;

// S_n = sum_m exp(-2 beta lambda_{n+m,n}) / ||v_{n+m,n} 1_(a,pi/2)||^2, m < m_max.
// With beta <= 0 the terms do not decay; the series is still summed to m_max
// and reported as not converged.
SSeriesReport s_series(int n, double T, double eps, double a, int m_max = 80);

}  // namespace bgctl
