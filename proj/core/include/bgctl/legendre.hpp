#pragma once

// Normalized associated Legendre eigenfunctions of the mode operators
//   L_n v = (cos x v')' / cos x - n^2 tan^2 x v
// on (-pi/2, pi/2) with weight cos x, and the shifted Jacobi polynomials
// that appear in the Christoffel-function mass estimate.

#include <span>
#include <vector>

namespace bgctl {

// Eigenpair index (ell, n) with ell >= n >= 0.
struct ModeIndex {
  int ell = 0;
  int n = 0;

  // Negative orders are folded to |n|. Throws std::invalid_argument when ell < |n|.
  static ModeIndex make(int ell, int n);
};

// ell(ell+1) - n^2, computed in integer arithmetic.
long long eigenvalue_exact(ModeIndex m);
double eigenvalue(ModeIndex m);

// v_{ell,n}(x) = sqrt((2ell+1)/2 (ell-n)!/(ell+n)!) P_ell^n(sin x), Condon-Shortley
// phase included. The normalization is folded into the recurrence seed so
// nothing overflows for large ell.
double eval_eigenfunction(ModeIndex m, double x);

// d/dx v_{ell,n}(x).
double eval_eigenfunction_dx(ModeIndex m, double x);

// Same quantity expressed in t = sin x, with s = sqrt(1 - t^2) >= 0 supplied
// by the caller (pass cos x when x is known, it is more accurate near the poles).
double normalized_legendre(int ell, int n, double t, double s);

// Fills out[ell - n] = v_{ell,n} for ell = n .. n + out.size() - 1.
void normalized_legendre_column(int n, double t, double s, std::span<double> out);

// Convenience wrappers in the angle variable.
std::vector<double> eigenfunction_column(int n, int ell_max, double x);
// Values and x-derivatives for ell = n .. ell_max.
void eigenfunction_column_with_dx(int n, int ell_max, double x, std::vector<double>& values,
                                  std::vector<double>& dx);

// p_k(u) = sqrt(2k+n+1) P_k^{(0,n)}(2u-1): orthonormal on [0,1] for the weight u^n.
double shifted_jacobi(int k, int n, double u);

}  // namespace bgctl
