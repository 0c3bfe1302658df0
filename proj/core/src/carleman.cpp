#include "bgctl/carleman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "bgctl/detail/jet.hpp"
#include "bgctl/errors.hpp"
#include "bgctl/quadrature.hpp"

namespace bgctl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kRampQuadrature = 64;

void check_b_prime(double b) {
  if (!(b > 0.0 && b < kHalfPi)) throw std::invalid_argument("carleman weight: b' must lie in (0, pi/2)");
}

long double falling(int i, int k) {
  long double f = 1.0L;
  for (int j = 0; j < k; ++j) f *= i - j;
  return f;
}
}  // namespace

const char* to_string(MatchingKind k) { return k == MatchingKind::Hermite ? "hermite" : "monotone_ramp"; }

double CarlemanWeight::boundary(double y, int k) {
  const double c = std::cos(y) / std::sin(y);
  const double s2 = 1.0 + c * c;  // csc^2
  switch (k) {
    case 0: return std::log(std::sin(y)) + 2.0 * y + 2.0;
    case 1: return c + 2.0;
    case 2: return -s2;
    case 3: return 2.0 * s2 * c;
    case 4: return -4.0 * s2 * c * c - 2.0 * s2 * s2;
    default: throw std::invalid_argument("carleman weight: derivative order must be 0..4");
  }
}

CarlemanWeight CarlemanWeight::hermite(double b_prime) {
  check_b_prime(b_prime);
  CarlemanWeight w;
  w.b_prime_ = b_prime;
  w.kind_ = MatchingKind::Hermite;
  w.lo_ = b_prime / 2.0;
  w.h_ = b_prime / 2.0;
  // p^(k)(0) = 0 for k >= 1, p(0) = 1; p^(k)(1) = h^k B^(k)(b')
  w.poly_.fill(0.0);
  w.poly_[0] = 1.0;
  Eigen::Matrix<long double, 5, 5> A;
  Eigen::Matrix<long double, 5, 1> rhs;
  long double hk = 1.0L;
  for (int k = 0; k <= 4; ++k) {
    long double known = 0.0L;
    for (int i = 0; i <= 4; ++i) known += w.poly_[i] * falling(i, k);
    rhs(k) = hk * boundary(b_prime, k) - known;
    for (int i = 5; i <= 9; ++i) A(k, i - 5) = falling(i, k);
    hk *= w.h_;
  }
  const Eigen::Matrix<long double, 5, 1> tail = A.fullPivLu().solve(rhs);
  for (int i = 5; i <= 9; ++i) w.poly_[i] = tail(i - 5);
  return w;
}

CarlemanWeight CarlemanWeight::monotone_ramp(double b_prime) {
  check_b_prime(b_prime);
  CarlemanWeight w;
  w.b_prime_ = b_prime;
  w.kind_ = MatchingKind::MonotoneRamp;
  w.lo_ = b_prime / 2.0;
  w.h_ = b_prime / 2.0;
  const auto rule = gauss_legendre(0.0, 1.0, kRampQuadrature);
  w.gl_nodes_ = rule.nodes;
  w.gl_weights_ = rule.weights;
  // I = int_lo^b' rho B'; value at b' is 1 + I + c
  double I = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    I += rule.weights[i] * w.h_ * detail::smooth_step<0>(u).c[0] * boundary(w.lo_ + w.h_ * u, 1);
  }
  w.ramp_c_ = boundary(b_prime, 0) - 1.0 - I;
  if (!(w.ramp_c_ >= 0.0)) throw InvariantViolated("monotone ramp needs B(b') - 1 >= int rho B'", b_prime);
  return w;
}

double CarlemanWeight::matching(double y, int k) const {
  const double u = std::clamp((y - lo_) / h_, 0.0, 1.0);
  if (kind_ == MatchingKind::Hermite) {
    long double acc = 0.0L;
    const long double uu = u;
    for (int i = 9; i >= k; --i) acc = acc * uu + poly_[i] * falling(i, k);
    return static_cast<double>(acc / std::pow(static_cast<long double>(h_), k));
  }
  if (k == 0) {
    double I = 0.0;
    const double span = y - lo_;
    for (std::size_t i = 0; i < gl_nodes_.size(); ++i) {
      const double s = lo_ + span * gl_nodes_[i];
      I += gl_weights_[i] * span * detail::smooth_step<0>((s - lo_) / h_).c[0] * boundary(s, 1);
    }
    return 1.0 + I + ramp_c_ * detail::smooth_step<0>(u).c[0];
  }
  // beta^(k) = sum_j binom(k-1, j) rho^(j) B^(k-j) + c S^(k)/h^k, rho^(j) = S^(j)/h^j
  const auto S = detail::smooth_step<4>(u);
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k - 1; ++j) {
    acc += binom * S.derivative(j) / std::pow(h_, j) * boundary(y, k - j);
    binom = binom * (k - 1 - j) / (j + 1);
  }
  return acc + ramp_c_ * S.derivative(k) / std::pow(h_, k);
}

double CarlemanWeight::one_sided(double y, int k, bool inner) const {
  // y >= 0; at a junction `inner` selects the piece closer to 0
  const double j0 = lo_, j1 = b_prime_;
  if (y < j0 || (y == j0 && inner)) return k == 0 ? 1.0 : 0.0;
  if (y < j1 || (y == j1 && inner)) return matching(y, k);
  return boundary(y, k);
}

double CarlemanWeight::derivative(double x, int k) const {
  if (k < 0 || k > 4) throw std::invalid_argument("carleman weight: derivative order must be 0..4");
  const double y = std::min(std::abs(x), kHalfPi);
  const double v = one_sided(y, k, false);
  // even function: odd derivatives flip sign on the left
  return (x < 0.0 && (k % 2 == 1)) ? -v : v;
}

std::array<double, 4> CarlemanWeight::junction_jumps() const {
  std::array<double, 4> out{};
  const double js[2] = {b_prime_ / 2.0, b_prime_};
  for (int j = 0; j < 2; ++j) {
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k)
      worst = std::max(worst, std::abs(one_sided(js[j], k, true) - one_sided(js[j], k, false)));
    // mirrored junctions carry the same jumps
    out[1 - j] = worst;
    out[2 + j] = worst;
  }
  return out;
}

bool CarlemanAudit::junctions_ok() const { return max_junction_jump <= kJunctionTolerance; }
bool CarlemanAudit::lower_bound_ok() const { return min_beta >= 1.0 - kSignTolerance; }
bool CarlemanAudit::monotone_ok() const { return min_monotone >= -kSignTolerance; }
bool CarlemanAudit::sin_sign_ok() const { return min_sin_sign >= -kSignTolerance; }

CarlemanAudit audit_carleman_weight(const CarlemanWeight& w, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("carleman audit: need at least two grid points");
  CarlemanAudit a;
  a.b_prime = w.b_prime();
  a.kind = w.kind();
  a.grid_points = grid_points;
  const auto jumps = w.junction_jumps();
  a.max_junction_jump = *std::max_element(jumps.begin(), jumps.end());
  a.min_beta = INFINITY;
  a.min_monotone = INFINITY;
  a.min_sin_sign = INFINITY;
  const double bp = w.b_prime();
  for (int i = 0; i < grid_points; ++i) {
    const double x = -kHalfPi + (2.0 * kHalfPi) * i / (grid_points - 1);
    const double beta = w.derivative(x, 0);
    const double d1 = w.derivative(x, 1);
    if (beta < a.min_beta) a.min_beta = beta;
    const double ax = std::abs(x);
    if (ax >= bp / 2.0 && ax <= bp) {
      const double m = x > 0.0 ? d1 : -d1;
      if (m < a.min_monotone) {
        a.min_monotone = m;
        a.min_monotone_x = x;
      }
    }
    if (ax <= bp) {
      const double s = d1 * std::sin(x);
      if (s < a.min_sin_sign) {
        a.min_sin_sign = s;
        a.min_sin_sign_x = x;
      }
    }
  }
  return a;
}

CarlemanWeight build_carleman_weight(double b_prime, CarlemanAudit* audit) {
  CarlemanWeight w = CarlemanWeight::hermite(b_prime);
  CarlemanAudit a = audit_carleman_weight(w);
  if (!a.monotone_ok() || !a.lower_bound_ok()) {
    w = CarlemanWeight::monotone_ramp(b_prime);
    a = audit_carleman_weight(w);
  }
  if (audit) *audit = a;
  if (!a.junctions_ok()) throw InvariantViolated("C4 junctions", b_prime);
  if (!a.lower_bound_ok()) throw InvariantViolated("beta >= 1", b_prime);
  if (!a.monotone_ok()) throw InvariantViolated("beta' sign(x) >= 0", a.min_monotone_x);
  if (!a.sin_sign_ok()) throw InvariantViolated("beta' sin x >= 0", a.min_sin_sign_x);
  return w;
}

}  // namespace bgctl
