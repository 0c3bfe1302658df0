#pragma once

// Moment-method null controls for one Fourier mode.
//
// For the family of decaying exponentials e_j(t) = exp(-lambda_j (T - t)) on
// (0, T), the minimal-norm biorthogonal family is q_k = sum_j D_kj e_j with
// D = G^{-1}, G the Gram matrix of the e_j. The control
//   u_n(t, x) = sum_l alpha_l q_l(t) v_{l,n}(x) 1_region(x),
//   alpha_l = -exp(-lambda_l T) <f0, v_l> / ||v_l 1_region||^2
// cancels the first N terminal moments exactly.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bgctl/numeric.hpp"
#include "bgctl/spectral.hpp"

namespace bgctl {

struct ExponentialFamily {
  int n = 0;
  std::vector<double> lambdas;  // lambda_{n,n}, ..., lambda_{n+N-1,n}
  double T = 0.0;
  // Length of the terminal window (T - quiet, T] on which the biorthogonal
  // functions vanish; 0 gives the plain family on (0, T).
  double quiet = 0.0;

  // Eigenvalues of L_n for ell = n .. n+N-1.
  static ExponentialFamily for_mode(int n, int N, double T, double quiet = 0.0);
  double support_end() const { return T - quiet; }
  int size() const { return static_cast<int>(lambdas.size()); }
};

// G_jk = int_0^{T - quiet} e_j e_k dt in closed form; for quiet = 0 this is
// (1 - exp(-(lambda_j + lambda_k) T)) / (lambda_j + lambda_k).
Eigen::MatrixXd gram_matrix(const ExponentialFamily& fam);
ExtMatrix gram_matrix_ext(const ExponentialFamily& fam);

// int_0^t exp(-a (T - s)) exp(-b (t - s)) ds, the elementary pairing behind
// every Gram entry and Duhamel integral.
Extended exp_pairing(Extended a, Extended b, Extended T, Extended t);

struct BiorthogonalOptions {
  Precision precision = Precision::Extended;
  // 0 selects the default for the precision: 1e12 (double), 1e24 (extended).
  double condition_ceiling = 0.0;
};

double default_condition_ceiling(Precision p);

struct BiorthogonalFamily {
  ExponentialFamily family;
  Precision precision = Precision::Extended;
  ExtMatrix gram;  // always evaluated in extended precision (for audits)
  ExtMatrix dual;  // D; symmetric
  double condition_estimate = 0.0;  // ||G||_1 ||G^{-1}||_1
  double residual = 0.0;            // max_kl |(G D^T)_kl - delta_kl|

  int size() const { return family.size(); }
  Eigen::MatrixXd dual_coeffs() const { return to_eigen(dual); }
  // ||q_k||^2_{L^2(0,T)} = D_kk.
  std::vector<double> q_norms_squared() const;
  // q_k(t).
  Extended q_value(int k, double t) const;
  // int_0^t q_k(s) exp(-mu (t - s)) ds for every k; at t = T this is the
  // moment of q_k against exp(-mu (T - .)).
  std::vector<Extended> pairing(double mu, double t) const;
  std::vector<Extended> pairing(double mu) const { return pairing(mu, family.T); }
};

// Throws IllConditioned when the condition estimate exceeds the ceiling or
// Cholesky meets a non-positive pivot.
BiorthogonalFamily biorthogonal(const ExponentialFamily& fam, const BiorthogonalOptions& opts = {});

struct SynthesisOptions {
  Precision precision = Precision::Extended;
  double condition_ceiling = 0.0;
  // Terminal audit truncation = check_factor * N.
  int check_factor = 2;
  // Length of the terminal quiet window (see ExponentialFamily::quiet). A
  // negative value selects quiet_suppression / lambda_{n+N,n}, capped at
  // kMaxQuietFraction * T: the first unsynthesized moment then sees an
  // extra damping of about exp(-quiet_suppression).
  double quiet_window = -1.0;
  double quiet_suppression = 20.0;
};

inline constexpr double kMaxQuietFraction = 0.25;

double resolve_quiet_window(const SynthesisOptions& opts, int n, int N, double T);

struct ControlPlan {
  int n = 0;
  double T = 0.0;
  Region region;
  std::optional<Crown> crown;  // set when the region is a single crown
  std::vector<double> alphas;  // alpha_{n+i, n}, i < N
  BiorthogonalFamily family;
  std::vector<double> masses;  // ||v_{n+i,n} 1_region||^2, i < N
  double cost = 0.0;           // ||u_n||_{L^2(0,T; H_n)}
  // Terminal coefficients on the audit truncation (check_factor * N).
  std::vector<double> terminal;
  double moment_residual = 0.0;    // norm of terminal[0, N)
  double leakage = 0.0;            // norm of terminal[N, check)
  double terminal_residual = 0.0;  // norm of terminal[0, check)

  int N() const { return family.size(); }
  const std::vector<double>& lambdas() const { return family.family.lambdas; }
  // u_n(t, x).
  double value(double t, double x) const;
  // Spatial factor sum_l alpha_l q_l(t) v_{l,n}(x) without the indicator.
  double value_unmasked(double t, double x) const;
};

// Moment-method control on an arbitrary region. Throws ZeroMass, IllConditioned.
ControlPlan synthesize_on_region(const SpectralField& field0, const Region& region, double T, int N,
                                 const SynthesisOptions& opts = {});

// Pole-touching crown (b = pi/2) version; throws std::invalid_argument otherwise.
ControlPlan synthesize(const SpectralField& field0, const Crown& crown, double T, int N,
                       const SynthesisOptions& opts = {});

struct GapAuditReport {
  int n = 0;
  int count = 0;
  long long first = 0;     // sigma_1 = n
  long long min_gap = 0;   // min sigma_{j+1} - sigma_j
  bool gaps_ok = false;    // sigma_1 >= 1 (n >= 1) and gaps >= 2
  // Tail majorant: smallest N(eta) >= 2 with sum_{j >= N} 1/(j-1)^2 <= eta,
  // certified by the integral comparison sum_{k >= m} 1/k^2 <= 1/(m-1).
  struct TailRow {
    double eta;
    int n_eta;
    bool certified;
  };
  std::vector<TailRow> tail;
  bool ok() const;
};

GapAuditReport gap_audit(const ExponentialFamily& fam, const std::vector<double>& etas = {0.5, 0.1, 0.01});

}  // namespace bgctl
