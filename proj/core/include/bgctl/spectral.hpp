#pragma once

// Mode-wise state representation: for a fixed Fourier order n a state is the
// coefficient vector on v_{n,n}, v_{n+1,n}, ... and the free semigroup is
// diagonal in that basis.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bgctl/numeric.hpp"

namespace bgctl {

// Latitude band (a, b) with 0 <= a < b <= pi/2.
struct Crown {
  double a = 0.0;
  double b = 0.0;

  static Crown make(double a, double b);
  // ln(1/cos a): the minimal control time from this crown.
  double alpha_agmon() const;
  bool touches_pole() const;
};

struct Interval {
  double lo;
  double hi;
};

// Finite union of disjoint open intervals in (-pi/2, pi/2).
class Region {
public:
  Region() = default;
  explicit Region(std::vector<Interval> parts);

  static Region from_crown(const Crown& c);
  // (-b, b), stored as (-b, 0) u (0, b).
  static Region symmetric_strip(double b);
  static Region full();

  const std::vector<Interval>& parts() const { return parts_; }
  bool contains(double x) const;
  double measure() const;

private:
  std::vector<Interval> parts_;
};

struct SpectralField {
  int n = 0;
  std::vector<double> coeffs;  // coefficient of v_{n+i, n}

  static SpectralField zero(int n, int truncation);
  static SpectralField single_mode(int n, int ell, int truncation);

  int truncation() const { return static_cast<int>(coeffs.size()); }
  int ell_max() const { return n + truncation() - 1; }
  double norm() const;
  // Pointwise value sum_i c_i v_{n+i,n}(x).
  double value(double x) const;
  // Zero-pad or cut to a new truncation.
  SpectralField resized(int truncation) const;
};

struct TimeGrid {
  double T = 0.0;
  std::vector<double> samples;

  static TimeGrid uniform(double T, int count);
};

// Entry (i, j) = int_region v_{n+i,n} v_{n+j,n} cos x dx, exact up to rounding via
// Gauss-Legendre in t = sin x.
Eigen::MatrixXd region_mass_matrix(int n, int ell_max, const Region& region);
Eigen::MatrixXd crown_mass_matrix(int n, int ell_max, const Crown& crown);

// Extended-precision variant (nodes, weights and recurrences in 113-bit
// arithmetic). Needed when the matrix itself is inverted.
ExtMatrix region_mass_matrix_ext(int n, int ell_max, const Region& region);
// First `rows` rows only (rows x (ell_max - n + 1)).
ExtMatrix region_mass_rows_ext(int n, int ell_max, const Region& region, int rows);

// max_k |<v_{ell,n}, v_{k,n}> - delta_{ell k}| over n <= k <= ell_max, per ell.
std::vector<double> orthonormality_residuals(int n, int ell_max);

// Diagonal entries only: ||v_{ell,n} 1_region||^2 for ell = n .. ell_max.
std::vector<double> localized_masses(int n, int ell_max, const Region& region);

// c_ell -> exp(-lambda_{ell,n} dt) c_ell.
SpectralField evolve_free(const SpectralField& field, double dt);

struct ControlPlan;

// Terminal state of the controlled mode system at t = plan.T, on the
// truncation of `field0`. The Duhamel time integrals are evaluated in closed
// form; no time stepping is involved. Throws std::invalid_argument when the
// field order or truncation is incompatible with the plan.
SpectralField duhamel_terminal(const SpectralField& field0, const ControlPlan& plan, double T);

// Same, at an intermediate time 0 <= t <= T.
SpectralField duhamel_at(const SpectralField& field0, const ControlPlan& plan, double t);

// States at every requested time (mass matrix assembled once).
std::vector<SpectralField> duhamel_trajectory(const SpectralField& field0, const ControlPlan& plan,
                                              const std::vector<double>& times);

}  // namespace bgctl
