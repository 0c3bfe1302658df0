#pragma once

// Reference evaluations that share no code with the library: Rodrigues
// formula in 50-digit arithmetic and plain closed forms.

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

inline cpp_int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline cpp_int fact(int n) {
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// P_ell^n(t) = (-1)^n (1-t^2)^{n/2} d^{ell+n}/dt^{ell+n} (t^2-1)^ell / (2^ell ell!)
inline Big legendre_rodrigues(int ell, int n, const Big& t) {
  const int m = ell + n;
  Big poly = 0;
  for (int k = 0; k <= ell; ++k) {
    const int p = 2 * k;
    if (p < m) continue;
    const cpp_int c = binom(ell, k) * fact(p) / fact(p - m) * (((ell - k) % 2) ? -1 : 1);
    poly += Big(c) * pow(t, p - m);
  }
  poly /= Big(cpp_int(1) << ell) * Big(fact(ell));
  const Big s = pow(1 - t * t, Big(n) / 2);
  return ((n % 2) ? -1 : 1) * s * poly;
}

// v_{ell,n}(x) with the same normalization and phase as the library.
inline double eigenfunction(int ell, int n, double x) {
  const Big t = sin(Big(x));
  const Big norm = sqrt(Big(2 * ell + 1) / 2 * Big(fact(ell - n)) / Big(fact(ell + n)));
  return static_cast<double>(norm * legendre_rodrigues(ell, n, t));
}

// Gauss-Legendre nodes by Newton on P_N in long double, independent from
// the library rule.
inline void gauss_legendre_ref(int N, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
  x.assign(N, 0.0);
  w.assign(N, 0.0);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int i = 0; i < N; ++i) {
    long double z = std::cos(pi * (i + 0.75L) / (N + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = z;
      for (int k = 2; k <= N; ++k) {
        const long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = N * (z * p1 - p0) / (z * z - 1);
      const long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    long double p0 = 1, p1 = z;
    for (int k = 2; k <= N; ++k) {
      const long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = N * (z * p1 - p0) / (z * z - 1);
    const long double half = (hi - lo) / 2.0L, mid = (hi + lo) / 2.0L;
    x[N - 1 - i] = static_cast<double>(mid + half * z);
    w[N - 1 - i] = static_cast<double>(half * 2 / ((1 - z * z) * dp * dp));
  }
}

}  // namespace oracle
