#include "bgctl/legendre.hpp"

#include "bgctl/detail/recurrence.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bgctl {

ModeIndex ModeIndex::make(int ell, int n) {
  const int order = std::abs(n);
  if (ell < 0 || ell < order) {
    throw std::invalid_argument("ModeIndex requires ell >= |n| >= 0 (ell=" + std::to_string(ell) +
                                ", n=" + std::to_string(n) + ")");
  }
  return ModeIndex{ell, order};
}

long long eigenvalue_exact(ModeIndex m) {
  const long long l = m.ell;
  const long long n = m.n;
  return l * (l + 1) - n * n;
}

double eigenvalue(ModeIndex m) { return static_cast<double>(eigenvalue_exact(m)); }

namespace {

// Pbar_n^n(t) = (-1)^n sqrt(1/2) prod_{m=1}^{n} sqrt((2m+1)/(2m)) s^n
double sectoral_seed(int n, double s) {
  double p = std::sqrt(0.5);
  for (int m = 1; m <= n; ++m) p *= -s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  return p;
}

}  // namespace

void normalized_legendre_column(int n, double t, double s, std::span<double> out) {
  detail::legendre_column<double>(n, t, s, out.data(), out.size());
}

double normalized_legendre(int ell, int n, double t, double s) {
  if (n < 0) {
    // Pbar_ell^{-m} = (-1)^m Pbar_ell^m under the Condon-Shortley convention.
    const double v = normalized_legendre(ell, -n, t, s);
    return (n % 2 == 0) ? v : -v;
  }
  if (ell < n) return 0.0;
  double prev2 = 0.0;
  double prev = sectoral_seed(n, s);
  if (ell == n) return prev;
  double cur = std::sqrt(2.0 * n + 3.0) * t * prev;
  const double nn = static_cast<double>(n) * n;
  for (int l = n + 2; l <= ell; ++l) {
    prev2 = prev;
    prev = cur;
    const double dl = l;
    const double a = std::sqrt((4.0 * dl * dl - 1.0) / (dl * dl - nn));
    const double b = std::sqrt(((dl - 1.0) * (dl - 1.0) - nn) / (4.0 * (dl - 1.0) * (dl - 1.0) - 1.0));
    cur = a * (t * prev - b * prev2);
  }
  return cur;
}

double eval_eigenfunction(ModeIndex m, double x) {
  return normalized_legendre(m.ell, m.n, std::sin(x), std::cos(x));
}

namespace {

// dv/dx from the theta-ladder identity (theta = pi/2 - x):
//   dPbar^n/dtheta = 1/2 [ sqrt((l-n)(l+n+1)) Pbar^{n+1} - sqrt((l+n)(l-n+1)) Pbar^{n-1} ]
// which stays regular at the poles.
double ladder_dx(int ell, int n, double up, double down) {
  const double l = ell;
  const double dn = n;
  const double cu = std::sqrt((l - dn) * (l + dn + 1.0));
  const double cd = std::sqrt((l + dn) * (l - dn + 1.0));
  return -0.5 * (cu * up - cd * down);
}

}  // namespace

double eval_eigenfunction_dx(ModeIndex m, double x) {
  const double t = std::sin(x);
  const double s = std::cos(x);
  const double up = normalized_legendre(m.ell, m.n + 1, t, s);
  const double down = normalized_legendre(m.ell, m.n - 1, t, s);
  return ladder_dx(m.ell, m.n, up, down);
}

std::vector<double> eigenfunction_column(int n, int ell_max, double x) {
  if (ell_max < n) return {};
  std::vector<double> out(static_cast<std::size_t>(ell_max - n + 1));
  normalized_legendre_column(n, std::sin(x), std::cos(x), out);
  return out;
}

void eigenfunction_column_with_dx(int n, int ell_max, double x, std::vector<double>& values,
                                  std::vector<double>& dx) {
  values.clear();
  dx.clear();
  if (ell_max < n) return;
  const double t = std::sin(x);
  const double s = std::cos(x);
  const auto count = static_cast<std::size_t>(ell_max - n + 1);
  values.resize(count);
  dx.resize(count);
  normalized_legendre_column(n, t, s, values);

  // order n+1 starts at ell = n+1; order n-1 starts at ell = n-1
  std::vector<double> up(count > 1 ? count - 1 : 0);
  normalized_legendre_column(n + 1, t, s, up);
  std::vector<double> down;
  if (n >= 1) {
    down.resize(count + 1);
    normalized_legendre_column(n - 1, t, s, down);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const int ell = n + static_cast<int>(i);
    const double u = (i >= 1) ? up[i - 1] : 0.0;
    double d;
    if (n >= 1) {
      d = down[i + 1];
    } else {
      d = (i >= 1) ? -up[i - 1] : 0.0;  // Pbar^{-1} = -Pbar^{1}
    }
    dx[i] = ladder_dx(ell, n, u, d);
  }
}

double shifted_jacobi(int k, int n, double u) {
  // Three-term recurrence for P_k^{(alpha,beta)} with alpha = 0, beta = n.
  const double x = 2.0 * u - 1.0;
  const double beta = n;
  double p0 = 1.0;
  if (k == 0) return std::sqrt(beta + 1.0);
  double p1 = 1.0 + (beta + 2.0) * (x - 1.0) / 2.0;
  for (int j = 2; j <= k; ++j) {
    const double dj = j;
    const double c = 2.0 * dj + beta;
    const double a1 = 2.0 * dj * (dj + beta) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * x - beta * beta);
    const double a3 = 2.0 * (dj - 1.0) * (dj + beta - 1.0) * c;
    const double p2 = (a2 * p1 - a3 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(2.0 * k + beta + 1.0) * p1;
}

}  // namespace bgctl
