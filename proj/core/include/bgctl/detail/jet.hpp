#pragma once

// Truncated Taylor arithmetic: a Jet<K> carries f(x0), f'(x0)/1!, ...,
// f^(K)(x0)/K!. Enough operations to differentiate the exp-based smooth step
// exactly instead of by finite differences.

#include <array>
#include <cmath>

namespace bgctl::detail {

template <int K>
struct Jet {
  std::array<double, K + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double x0) {
    Jet j;
    j.c[0] = x0;
    if constexpr (K >= 1) j.c[1] = 1.0;
    return j;
  }

  // k-th derivative at the expansion point.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  friend Jet operator+(Jet a, const Jet& b) {
    for (int i = 0; i <= K; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int i = 0; i <= K; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= K; ++i)
      for (int j = 0; i + j <= K; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator*(double s, Jet a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend Jet operator+(double s, Jet a) {
    a.c[0] += s;
    return a;
  }
  friend Jet operator-(double s, const Jet& a) { return s + (-a); }

  friend Jet reciprocal(const Jet& a) {
    // r * a = 1 solved order by order
    Jet r;
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k <= K; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
      r.c[k] = -s / a.c[0];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet exp(const Jet& a) {
    // r' = a' r
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k <= K; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
      r.c[k] = s / k;
    }
    return r;
  }
};

// S(u) = 1 / (1 + exp(1/u - 1/(1-u))) on (0, 1), 0 below, 1 above: C-infinity,
// every derivative vanishes at u = 0 and u = 1.
template <int K>
Jet<K> smooth_step(double u) {
  if (u <= 0.0) return Jet<K>::constant(0.0);
  if (u >= 1.0) return Jet<K>::constant(1.0);
  const Jet<K> x = Jet<K>::variable(u);
  const Jet<K> arg = reciprocal(x) - reciprocal(1.0 - x);
  if (arg.c[0] > 700.0) return Jet<K>::constant(0.0);
  if (arg.c[0] < -700.0) return Jet<K>::constant(1.0);
  // keep the exponent non-positive so no jet coefficient overflows
  if (arg.c[0] > 0.0) {
    const Jet<K> e = exp(-arg);
    return e / (1.0 + e);
  }
  return reciprocal(1.0 + exp(arg));
}

}  // namespace bgctl::detail
