#include "bgctl/sweep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace bgctl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

SweepFit fit_row(double T, const std::vector<double>& ns, const std::vector<double>& log_costs) {
  SweepFit f;
  f.T = T;
  f.points = static_cast<int>(ns.size());
  if (ns.size() < 3) return f;
  const auto m = static_cast<Eigen::Index>(ns.size());
  Eigen::MatrixXd lin(m, 2), full(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    lin(i, 0) = ns[i];
    lin(i, 1) = 1.0;
    full(i, 0) = ns[i];
    full(i, 1) = std::log(ns[i]);
    full(i, 2) = 1.0;
    y(i) = log_costs[i];
  }
  f.slope = lin.colPivHouseholderQr().solve(y)(0);
  const Eigen::VectorXd c = full.colPivHouseholderQr().solve(y);
  f.rate = c(0);
  f.power = c(1);
  f.ok = std::isfinite(f.slope) && std::isfinite(f.rate);
  return f;
}
}  // namespace

std::optional<double> zero_crossing(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t i = 0; i + 1 < x.size() && i + 1 < y.size(); ++i) {
    if (y[i] > 0.0 && y[i + 1] <= 0.0) return x[i] + (x[i + 1] - x[i]) * y[i] / (y[i] - y[i + 1]);
  }
  return std::nullopt;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {to_number(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid must be 'lo:hi:step' or a single value");
  const double lo = to_number(spec.substr(0, c1));
  const double hi = to_number(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = to_number(spec.substr(c2 + 1));
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("grid needs lo <= hi and step > 0");
  // integer count avoids accumulated drift and keeps hi when it is on the lattice
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

SweepReport sweep_minimal_time(double a, const std::vector<double>& T_grid, int n_max, int N,
                               const SweepOptions& opts) {
  if (!(a > 0.0 && a < kHalfPi)) throw std::invalid_argument("sweep: a must lie in (0, pi/2)");
  if (n_max < 1 || N < 1) throw std::invalid_argument("sweep: needs n_max >= 1, N >= 1");
  if (opts.fit_from < 1 || opts.fit_from > n_max) throw std::invalid_argument("sweep: fit_from must lie in [1, n_max]");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > 0.0)) throw std::invalid_argument("sweep: horizons must be positive");
    if (i > 0 && !(T_grid[i] > T_grid[i - 1])) throw std::invalid_argument("sweep: T grid must be strictly increasing");
  }
  SweepReport rep;
  rep.a = a;
  rep.n_max = n_max;
  rep.N = N;
  rep.options = opts;
  rep.T_grid = T_grid;
  const Crown crown = Crown::make(a, kHalfPi);
  rep.theoretical_T_min = crown.alpha_agmon();

  SynthesisOptions so;
  so.precision = opts.precision;
  so.condition_ceiling = opts.condition_ceiling;
  so.quiet_window = opts.quiet_window;

  std::vector<double> slopes, rates, fit_T_slope, fit_T_rate;
  for (double T : T_grid) {
    std::vector<double> ns, lc;
    for (int n = 1; n <= n_max; ++n) {
      SweepPoint p;
      p.T = T;
      p.n = n;
      try {
        const auto plan = synthesize(SpectralField::single_mode(n, n, N), crown, T, N, so);
        p.cost = plan.cost;
        p.cond = plan.family.condition_estimate;
        p.residual = plan.family.residual;
        if (n >= opts.fit_from && plan.cost > 0.0) {
          ns.push_back(n);
          lc.push_back(std::log(plan.cost));
        }
      } catch (const std::exception& e) {
        p.cost = NAN;
        p.cond = NAN;
        p.residual = NAN;
        p.error = e.what();
      }
      rep.points.push_back(p);
    }
    const SweepFit f = fit_row(T, ns, lc);
    rep.fits.push_back(f);
    if (f.ok) {
      fit_T_slope.push_back(T);
      slopes.push_back(f.slope);
      fit_T_rate.push_back(T);
      rates.push_back(f.rate);
    }
  }
  rep.T_hat_linear = zero_crossing(fit_T_slope, slopes);
  // rate and power trade off at small T over short n ranges, so a rate
  // crossing alone is not evidence of a threshold
  if (rep.T_hat_linear) rep.T_hat = zero_crossing(fit_T_rate, rates);
  return rep;
}

}  // namespace bgctl
