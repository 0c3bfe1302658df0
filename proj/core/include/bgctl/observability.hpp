#pragma once

// Finite-mode observability of the free mode system g' = L_n g on the modes
// ell = n .. ell_max: the smallest C with
//   ||g(T)||^2 <= C int_0^T int_region |g(t, x)|^2 cos x dx dt.
// With g(0) = sum c_l v_l, the right-hand integral is c^T B c where
// B = G o M (Gram matrix of exp(-lambda t) on (0, T) times the region mass
// matrix, entrywise), and ||g(T)||^2 = c^T A c with A = diag(exp(-2 lambda T)).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bgctl/spectral.hpp"

namespace bgctl {

struct ObservabilityResult {
  int n = 0;
  int ell_max = 0;
  double T = 0.0;
  double constant = 0.0;      // largest generalized eigenvalue of (A, B)
  double b_condition = 0.0;   // ||B||_1 ||B^{-1}||_1
};

// Computed in extended precision; throws SingularRegion when B is not
// numerically positive definite.
ObservabilityResult observability(int n, int ell_max, const Region& region, double T);

inline double observability_constant(int n, int ell_max, const Region& region, double T) {
  return observability(n, ell_max, region, T).constant;
}

inline constexpr std::uint64_t kDefaultSeed = 20240531;

struct DissipationReport {
  int n = 0;
  int ell_max = 0;
  double t = 0.0;
  double T = 0.0;
  double bound = 0.0;             // exp(-n (T - t))
  double bottom_ratio = 0.0;      // ratio for g = v_{n,n}
  double worst_basis_ratio = 0.0;
  double worst_random_ratio = 0.0;
  int random_samples = 0;
  bool strict_above_bottom = false;  // every v_{ell,n}, ell > n, strictly below the bound

  double worst_ratio() const { return std::max(worst_basis_ratio, worst_random_ratio); }
  bool holds(double rel_tol = 1e-12) const { return worst_ratio() <= bound * (1.0 + rel_tol); }
};

// ||exp((T - t) L_n) g|| / ||g|| over the basis v_{n..ell_max, n} and
// `samples` Gaussian coefficient vectors drawn from a seeded generator.
DissipationReport dissipation_audit(int n, int ell_max, double t, double T, std::uint64_t seed = kDefaultSeed,
                                    int samples = 100);

}  // namespace bgctl
