#pragma once

// Minimal-time sweep: for each horizon T, null controls of the bottom modes
// f0 = v_{n,n} (n = 1 .. n_max) from the pole-touching crown (a, pi/2), and
// the exponential growth rate of their cost in n. The rate changes sign at
// the minimal control time ln(1/cos a).

#include <optional>
#include <string>
#include <vector>

#include "bgctl/moments.hpp"

namespace bgctl {

struct SweepOptions {
  // Cost rates are fitted over n = fit_from .. n_max.
  int fit_from = 2;
  Precision precision = Precision::Extended;
  double condition_ceiling = 0.0;
  // The cost of a single mode is a property of the plain family on (0, T).
  double quiet_window = 0.0;
};

struct SweepPoint {
  double T = 0.0;
  int n = 0;
  double cost = 0.0;
  double cond = 0.0;
  double residual = 0.0;
  std::string error;  // non-empty when synthesis failed at this point

  bool ok() const { return error.empty(); }
};

struct SweepFit {
  double T = 0.0;
  int points = 0;
  // least-squares slope of ln cost against n
  double slope = 0.0;
  // ln cost ~ rate n + power ln n + const: the exponential rate with the
  // polynomial prefactor of the single-mode cost absorbed
  double rate = 0.0;
  double power = 0.0;
  bool ok = false;
};

struct SweepReport {
  double a = 0.0;
  int n_max = 0;
  int N = 0;
  SweepOptions options;
  std::vector<double> T_grid;
  std::vector<SweepPoint> points;  // row-major in (T, n)
  std::vector<SweepFit> fits;      // one per T
  std::optional<double> T_hat;         // zero crossing of the rate, if the slope also crosses
  std::optional<double> T_hat_linear;  // zero crossing of the plain slope
  double theoretical_T_min = 0.0;      // ln(1/cos a)
};

// First positive-to-non-positive crossing, linearly interpolated.
std::optional<double> zero_crossing(const std::vector<double>& x, const std::vector<double>& y);

// Parses "lo:hi:step" or a single value. Throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& spec);

SweepReport sweep_minimal_time(double a, const std::vector<double>& T_grid, int n_max, int N,
                               const SweepOptions& opts = {});

}  // namespace bgctl
