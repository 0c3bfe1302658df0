#pragma once

// Control from a general crown (a, b), b < pi/2, glued from two moment-method
// controls: u_R on the pole-touching crown (a, pi/2) and u_L on the symmetric
// strip (-b, b). With chi = 0 below c1 and 1 above c2 (a < c1 < c2 < b),
//   f = (1 - chi) f_R + chi f_L,
//   u = (1 - chi) u_R 1_(a,pi/2) + chi u_L 1_(-b,b) + [L, chi](f_R - f_L),
//   [L, chi] w = 2 chi' w_x + (chi'' - tan x chi') w,
// solves f' = L f + u, starts at f0, ends near 0 and u vanishes outside (a, b).
// Everything is per Fourier mode n since chi depends on x only.

#include <array>
#include <optional>
#include <vector>

#include "bgctl/moments.hpp"

namespace bgctl {

struct CutoffProfile {
  double c1 = 0.0;
  double c2 = 0.0;

  // chi(x) = S((x - c1)/(c2 - c1)) with the exp-based smooth step S.
  static CutoffProfile make(double c1, double c2);
  // Default cut points a + (b-a)/3 and a + 2(b-a)/3.
  static CutoffProfile for_crown(const Crown& crown);

  // {chi, chi', chi''} at x.
  std::array<double, 3> eval(double x) const;
  double chi(double x) const { return eval(x)[0]; }
  double dchi(double x) const { return eval(x)[1]; }
  double d2chi(double x) const { return eval(x)[2]; }
};

// Samples of [L, chi] w on `xs`, with w = sum_i c_i v_{n+i,n}.
std::vector<double> commutator_source(const CutoffProfile& profile, const SpectralField& w,
                                      const std::vector<double>& xs);

struct CutoffConfig {
  int N = 12;
  std::optional<double> c1, c2;  // defaults from CutoffProfile::for_crown
  int time_samples = 400;
  int space_samples = 801;
  // Modes beyond the audit truncation carried by the two trajectories.
  int extra_modes = 500;
  // Central-difference step of the residual audit as a fraction of the
  // sample spacing; <= 0 uses the spacing itself.
  double fd_step = 1e-5;
  SynthesisOptions synthesis;
  // Keep the sampled control in the result (large).
  bool keep_samples = false;
};

inline constexpr double kSupportTolerance = 1e-8;

struct CompositionResult {
  int n = 0;
  Crown crown;
  double T = 0.0;
  CutoffProfile profile;
  ControlPlan right;  // (a, pi/2)
  ControlPlan left;   // (-b, b)
  double norm0 = 0.0;

  std::vector<double> times;
  std::vector<double> xs;
  std::vector<double> samples;  // u(times[i], xs[j]) at i * xs.size() + j, if kept

  double sup_control = 0.0;
  // max |u| outside (a, b) relative to sup |u|, overall and per summand
  double max_violation = 0.0;
  double max_violation_x = 0.0;
  std::array<double, 3> summand_violation{};
  double initial_error = 0.0;  // ||f(0) - f0||
  double terminal_norm = 0.0;  // ||(1 - chi) f_R(T) + chi f_L(T)||
  // max over interior samples of ||dF/dt + Lambda F - U|| / ||f0|| in the
  // coefficients on the audit truncation; stencils straddling the switch-off
  // time of the biorthogonal functions are skipped (u jumps there)
  double pde_residual = 0.0;
  std::vector<double> pde_series;  // per time sample, NaN where no stencil was evaluated
  int audit_modes = 0;
  int trajectory_modes = 0;
  int pde_stencils = 0;
  int pde_skipped = 0;

  bool support_ok() const { return max_violation <= kSupportTolerance; }
};

// Throws SupportViolation when the support audit fails, and whatever the two
// syntheses throw.
CompositionResult compose(const SpectralField& field0, const Crown& crown, double T, const CutoffConfig& cfg = {});

}  // namespace bgctl
