#pragma once

// Even C^4 weight beta on [-pi/2, pi/2]:
//   beta(x) = ln|sin x| + 2|x| + 2   for b' <= |x| <= pi/2,
//   beta(x) = 1                      for |x| <= b'/2,
// joined on b'/2 <= |x| <= b' by a matching piece that agrees with both
// neighbours up to the fourth derivative.

#include <array>
#include <string>
#include <vector>

namespace bgctl {

enum class MatchingKind {
  // degree-9 two-point Hermite interpolant
  Hermite,
  // beta' = rho B' + c S'/h: rho a smooth step, B the boundary formula,
  // c >= 0 fixed so the value matches at b'. Monotone by construction.
  MonotoneRamp,
};

const char* to_string(MatchingKind k);

class CarlemanWeight {
public:
  static CarlemanWeight hermite(double b_prime);
  static CarlemanWeight monotone_ramp(double b_prime);

  double b_prime() const { return b_prime_; }
  MatchingKind kind() const { return kind_; }

  // k-th derivative of beta at x, 0 <= k <= 4.
  double derivative(double x, int k) const;
  double operator()(double x) const { return derivative(x, 0); }

  // Largest |left - right| over orders 0..4 at each of the four junctions
  // -b', -b'/2, b'/2, b'.
  std::array<double, 4> junction_jumps() const;

  // Boundary formula B(y) = ln sin y + 2y + 2 and its derivatives (y > 0).
  static double boundary(double y, int k);

private:
  double matching(double y, int k) const;  // b'/2 <= y <= b'
  double one_sided(double y, int k, bool inner) const;

  double b_prime_ = 0.0;
  MatchingKind kind_ = MatchingKind::Hermite;
  double lo_ = 0.0;  // b'/2
  double h_ = 0.0;   // b'/2
  // Hermite coefficients in u = (y - lo)/h; long double keeps the fourth
  // derivative at the junctions well inside the C^4 tolerance
  std::array<long double, 10> poly_{};
  double ramp_c_ = 0.0;
  std::vector<double> gl_nodes_, gl_weights_;  // on [0, 1], for the ramp integral
};

struct CarlemanAudit {
  double b_prime = 0.0;
  MatchingKind kind = MatchingKind::Hermite;
  int grid_points = 0;
  double max_junction_jump = 0.0;
  double min_beta = 0.0;
  // min of beta'(x) sign(x) over b'/2 <= |x| <= b'
  double min_monotone = 0.0;
  double min_monotone_x = 0.0;
  // min of beta'(x) sin x over |x| <= b'
  double min_sin_sign = 0.0;
  double min_sin_sign_x = 0.0;

  bool junctions_ok() const;
  bool lower_bound_ok() const;
  bool monotone_ok() const;
  bool sin_sign_ok() const;
  bool pass() const { return junctions_ok() && lower_bound_ok() && monotone_ok() && sin_sign_ok(); }
};

inline constexpr double kJunctionTolerance = 1e-8;
// Rounding allowance for the sign and lower-bound checks where the exact
// value is 0 (flat junctions) or 1 (plateau).
inline constexpr double kSignTolerance = 1e-12;

CarlemanAudit audit_carleman_weight(const CarlemanWeight& w, int grid_points = 10000);

// Hermite first; if its audit fails the monotonicity condition, the monotone
// ramp is used instead. Throws InvariantViolated if the final weight fails
// any check and std::invalid_argument unless 0 < b' < pi/2.
CarlemanWeight build_carleman_weight(double b_prime, CarlemanAudit* audit = nullptr);

}  // namespace bgctl
