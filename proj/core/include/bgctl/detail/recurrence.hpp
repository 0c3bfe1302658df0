#pragma once

// Scalar-generic kernels shared by the double and extended-precision paths.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace bgctl::detail {

template <class Real>
void legendre_column(int n, Real t, Real s, Real* out, std::size_t count) {
  using std::sqrt;
  if (count == 0) return;
  Real p = sqrt(Real(0.5));
  for (int m = 1; m <= n; ++m) p *= -s * sqrt(Real(2 * m + 1) / Real(2 * m));
  out[0] = p;
  if (count == 1) return;
  out[1] = sqrt(Real(2 * n + 3)) * t * p;
  const Real nn = Real(n) * Real(n);
  for (std::size_t i = 2; i < count; ++i) {
    const Real l = Real(n) + Real(static_cast<int>(i));
    const Real a = sqrt((Real(4) * l * l - Real(1)) / (l * l - nn));
    const Real b = sqrt(((l - 1) * (l - 1) - nn) / (Real(4) * (l - 1) * (l - 1) - Real(1)));
    out[i] = a * (t * out[i - 1] - b * out[i - 2]);
  }
}

// Gauss-Legendre on [lo, hi]; returns false if Newton fails to reach tol.
template <class Real>
bool gauss_legendre_rule(Real lo, Real hi, int npoints, Real tol, std::vector<Real>& nodes,
                         std::vector<Real>& weights) {
  using std::abs;
  using std::cos;
  nodes.assign(npoints, Real(0));
  weights.assign(npoints, Real(0));
  const Real half = (hi - lo) / 2;
  const Real mid = (hi + lo) / 2;
  if (npoints == 1) {
    nodes[0] = mid;
    weights[0] = 2 * half;
    return true;
  }
  const Real pi = Real(std::numbers::pi);
  const int m = (npoints + 1) / 2;
  for (int i = 0; i < m; ++i) {
    Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(npoints) + Real(0.5)));
    Real p1 = 0, p0 = 0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      p0 = 1;
      p1 = x;
      for (int k = 2; k <= npoints; ++k) {
        const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      const Real dp = Real(npoints) * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) return false;
    if (npoints % 2 == 1 && i == m - 1) x = 0;
    p0 = 1;
    p1 = x;
    for (int k = 2; k <= npoints; ++k) {
      const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
      p0 = p1;
      p1 = p2;
    }
    const Real dp = Real(npoints) * (x * p1 - p0) / (x * x - 1);
    const Real w = Real(2) / ((1 - x * x) * dp * dp);
    nodes[i] = mid - half * x;
    weights[i] = half * w;
    nodes[npoints - 1 - i] = mid + half * x;
    weights[npoints - 1 - i] = half * w;
  }
  return true;
}

}  // namespace bgctl::detail
