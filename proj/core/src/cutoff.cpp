#include "bgctl/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "bgctl/detail/jet.hpp"
#include "bgctl/errors.hpp"
#include "bgctl/legendre.hpp"
#include "bgctl/quadrature.hpp"

namespace bgctl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kMinPiecePoints = 160;

// Gauss-Legendre in t = sin x on each piece between breakpoints; holds x,
// cos x, the weight (for dt = cos x dx) and eigenfunction columns per node.
struct SpaceRule {
  std::vector<double> x, w;
  std::vector<std::vector<double>> v, dv;

  SpaceRule(int n, int ell_max, std::vector<double> breaks) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      // exact for the polynomial pieces, generous for the chi-weighted ones
      const int points = std::max(kMinPiecePoints, ell_max + 40);
      const auto rule = gauss_legendre(std::sin(breaks[p]), std::sin(breaks[p + 1]), points);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        x.push_back(std::asin(rule.nodes[i]));
        w.push_back(rule.weights[i]);
      }
    }
    v.resize(x.size());
    dv.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) eigenfunction_column_with_dx(n, ell_max, x[i], v[i], dv[i]);
  }
};

double field_value(const std::vector<double>& col, const std::vector<double>& c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * col[i];
  return acc;
}

double l2(const Eigen::VectorXd& v) { return v.norm(); }
}  // namespace

CutoffProfile CutoffProfile::make(double c1, double c2) {
  if (!(c1 < c2)) throw std::invalid_argument("cutoff profile needs c1 < c2");
  return CutoffProfile{c1, c2};
}

CutoffProfile CutoffProfile::for_crown(const Crown& crown) {
  const double d = crown.b - crown.a;
  return make(crown.a + d / 3.0, crown.a + 2.0 * d / 3.0);
}

std::array<double, 3> CutoffProfile::eval(double x) const {
  const double h = c2 - c1;
  const auto s = detail::smooth_step<2>((x - c1) / h);
  return {s.derivative(0), s.derivative(1) / h, s.derivative(2) / (h * h)};
}

std::vector<double> commutator_source(const CutoffProfile& profile, const SpectralField& w,
                                      const std::vector<double>& xs) {
  std::vector<double> out(xs.size(), 0.0);
  std::vector<double> vals, dx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto c = profile.eval(xs[i]);
    if (c[1] == 0.0 && c[2] == 0.0) continue;
    eigenfunction_column_with_dx(w.n, w.ell_max(), xs[i], vals, dx);
    const double wv = field_value(vals, w.coeffs);
    const double wx = field_value(dx, w.coeffs);
    out[i] = 2.0 * c[1] * wx + (c[2] - std::tan(xs[i]) * c[1]) * wv;
  }
  return out;
}

CompositionResult compose(const SpectralField& field0, const Crown& crown, double T, const CutoffConfig& cfg) {
  if (crown.touches_pole()) throw std::invalid_argument("compose: crown must satisfy b < pi/2");
  if (cfg.time_samples < 3 || cfg.space_samples < 2) throw std::invalid_argument("compose: too few samples");
  CompositionResult res;
  res.n = field0.n;
  res.crown = crown;
  res.T = T;
  const auto def = CutoffProfile::for_crown(crown);
  res.profile = CutoffProfile::make(cfg.c1.value_or(def.c1), cfg.c2.value_or(def.c2));
  const auto& prof = res.profile;
  if (!(prof.c1 > crown.a && prof.c2 < crown.b)) throw std::invalid_argument("compose: need a < c1 < c2 < b");

  const int n = field0.n;
  const int N = cfg.N;
  res.right = synthesize(field0, Crown::make(crown.a, kHalfPi), T, N, cfg.synthesis);
  res.left = synthesize_on_region(field0, Region::symmetric_strip(crown.b), T, N, cfg.synthesis);
  // audit truncation K; trajectories carry K + extra modes because chi couples
  // the tail of f_R, f_L back into the audited coefficients
  const int K = std::max(static_cast<int>(res.right.terminal.size()), static_cast<int>(res.left.terminal.size()));
  const int KT = K + std::max(cfg.extra_modes, 0);
  const SpectralField f0 = field0.resized(KT);
  res.norm0 = f0.norm();
  res.audit_modes = K;
  res.trajectory_modes = KT;
  const int ell_max = n + KT - 1;

  res.times = TimeGrid::uniform(T, cfg.time_samples).samples;
  const auto traj_r = duhamel_trajectory(f0, res.right, res.times);
  const auto traj_l = duhamel_trajectory(f0, res.left, res.times);
  const std::size_t S = res.times.size();

  // time profiles a_l(t) = alpha_l q_l(t)
  auto profiles = [&](const ControlPlan& p) {
    Eigen::MatrixXd A(p.N(), static_cast<Eigen::Index>(S));
    for (std::size_t i = 0; i < S; ++i)
      for (int l = 0; l < p.N(); ++l)
        A(l, static_cast<Eigen::Index>(i)) =
            p.alphas[l] == 0.0 ? 0.0 : p.alphas[l] * static_cast<double>(p.family.q_value(l, res.times[i]));
    return A;
  };
  const Eigen::MatrixXd aR = profiles(res.right);
  const Eigen::MatrixXd aL = profiles(res.left);
  Eigen::MatrixXd R(KT, static_cast<Eigen::Index>(S)), L(KT, static_cast<Eigen::Index>(S));
  for (std::size_t i = 0; i < S; ++i)
    for (int k = 0; k < KT; ++k) {
      R(k, static_cast<Eigen::Index>(i)) = traj_r[i].coeffs[k];
      L(k, static_cast<Eigen::Index>(i)) = traj_l[i].coeffs[k];
    }
  const Eigen::MatrixXd W = R - L;

  // --- support audit on the (t, x) grid
  for (int j = 0; j < cfg.space_samples; ++j)
    res.xs.push_back(-kHalfPi + (2.0 * kHalfPi) * j / (cfg.space_samples - 1));
  // points just outside the closed crown probe the edges
  for (double e : {crown.a, crown.b}) {
    res.xs.push_back(std::nextafter(e, -10.0));
    res.xs.push_back(std::nextafter(e, 10.0));
  }
  std::sort(res.xs.begin(), res.xs.end());
  const Region right_region = res.right.region;
  const Region left_region = res.left.region;
  double sup = 0.0, worst_out = 0.0, worst_x = 0.0;
  std::array<double, 3> worst_part{};
  if (cfg.keep_samples) res.samples.assign(S * res.xs.size(), 0.0);
  std::vector<double> vals, dx;
  for (std::size_t j = 0; j < res.xs.size(); ++j) {
    const double x = res.xs[j];
    eigenfunction_column_with_dx(n, ell_max, x, vals, dx);
    const auto c = prof.eval(x);
    const bool inside = x > crown.a && x < crown.b;
    const bool in_r = right_region.contains(x), in_l = left_region.contains(x);
    const double tanx = std::abs(x) < kHalfPi ? std::tan(x) : 0.0;
    for (std::size_t i = 0; i < S; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      double ur = 0.0, ul = 0.0, wv = 0.0, wx = 0.0;
      if (in_r)
        for (int l = 0; l < N; ++l) ur += aR(l, ii) * vals[l];
      if (in_l)
        for (int l = 0; l < N; ++l) ul += aL(l, ii) * vals[l];
      for (int k = 0; k < KT; ++k) {
        wv += W(k, ii) * vals[k];
        wx += W(k, ii) * dx[k];
      }
      const double parts[3] = {(1.0 - c[0]) * ur, c[0] * ul, 2.0 * c[1] * wx + (c[2] - tanx * c[1]) * wv};
      const double u = parts[0] + parts[1] + parts[2];
      if (cfg.keep_samples) res.samples[i * res.xs.size() + j] = u;
      sup = std::max(sup, std::abs(u));
      if (!inside) {
        if (std::abs(u) > worst_out) {
          worst_out = std::abs(u);
          worst_x = x;
        }
        for (int p = 0; p < 3; ++p) worst_part[p] = std::max(worst_part[p], std::abs(parts[p]));
      }
    }
  }
  res.sup_control = sup;
  res.max_violation = sup > 0.0 ? worst_out / sup : worst_out;
  res.max_violation_x = worst_x;
  for (int p = 0; p < 3; ++p) res.summand_violation[p] = sup > 0.0 ? worst_part[p] / sup : worst_part[p];

  // --- projections onto v_k (k < K) by quadrature
  const SpaceRule rule(n, ell_max, {-kHalfPi, -crown.b, 0.0, crown.a, prof.c1, prof.c2, crown.b, kHalfPi});
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(K, KT), Z = Eigen::MatrixXd::Zero(K, KT);
  Eigen::MatrixXd YR = Eigen::MatrixXd::Zero(K, N), YL = Eigen::MatrixXd::Zero(K, N);
  double term2 = 0.0;
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const double x = rule.x[q], wq = rule.w[q];
    const auto c = prof.eval(x);
    const auto& v = rule.v[q];
    const auto& d = rule.dv[q];
    const double tanx = std::tan(x);
    const double wr = right_region.contains(x) ? 1.0 - c[0] : 0.0;
    const double wl = left_region.contains(x) ? c[0] : 0.0;
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < KT; ++j) {
        X(k, j) += wq * c[0] * v[j] * v[k];
        if (c[1] != 0.0 || c[2] != 0.0) Z(k, j) += wq * (2.0 * c[1] * d[j] + (c[2] - tanx * c[1]) * v[j]) * v[k];
      }
      for (int l = 0; l < N; ++l) {
        YR(k, l) += wq * wr * v[l] * v[k];
        YL(k, l) += wq * wl * v[l] * v[k];
      }
    }
    const double fT = (1.0 - c[0]) * field_value(v, traj_r.back().coeffs) + c[0] * field_value(v, traj_l.back().coeffs);
    term2 += wq * fT * fT;
  }
  res.terminal_norm = std::sqrt(term2);

  // F = coefficients of (1 - chi) f_R + chi f_L = R - X W
  const Eigen::MatrixXd F = R.topRows(K) - X * W;
  Eigen::VectorXd f0v(K);
  for (int k = 0; k < K; ++k) f0v(k) = f0.coeffs[k];
  res.initial_error = l2(F.col(0) - f0v);

  Eigen::VectorXd lambda(K);
  for (int k = 0; k < K; ++k) lambda(k) = eigenvalue(ModeIndex{n + k, n});
  const double dt = res.times[1] - res.times[0];
  const double h = cfg.fd_step > 0.0 ? cfg.fd_step * dt : dt;
  const double switch_r = res.right.family.family.support_end();
  const double switch_l = res.left.family.family.support_end();
  auto straddles = [&](double lo, double hi, double s) { return s < T && lo < s && s < hi; };
  std::vector<std::size_t> audited;
  std::vector<double> fd_times;
  for (std::size_t i = 1; i + 1 < S; ++i) {
    const double lo = res.times[i] - h, hi = res.times[i] + h;
    if (straddles(lo, hi, switch_r) || straddles(lo, hi, switch_l)) {
      ++res.pde_skipped;
      continue;
    }
    audited.push_back(i);
    fd_times.push_back(lo);
    fd_times.push_back(hi);
  }
  const auto fd_r = duhamel_trajectory(f0, res.right, fd_times);
  const auto fd_l = duhamel_trajectory(f0, res.left, fd_times);
  auto composed = [&](std::size_t m) {
    Eigen::VectorXd r(KT), l(KT);
    for (int k = 0; k < KT; ++k) {
      r(k) = fd_r[m].coeffs[k];
      l(k) = fd_l[m].coeffs[k];
    }
    return Eigen::VectorXd(r.head(K) - X * (r - l));
  };
  double worst = 0.0;
  res.pde_series.assign(S, NAN);
  for (std::size_t m = 0; m < audited.size(); ++m) {
    const auto ii = static_cast<Eigen::Index>(audited[m]);
    const Eigen::VectorXd dF = (composed(2 * m + 1) - composed(2 * m)) / (2.0 * h);
    const Eigen::VectorXd U = YR * aR.col(ii) + YL * aL.col(ii) + Z * W.col(ii);
    const Eigen::VectorXd r = dF + lambda.cwiseProduct(F.col(ii)) - U;
    res.pde_series[audited[m]] = l2(r);
    worst = std::max(worst, res.pde_series[audited[m]]);
    ++res.pde_stencils;
  }
  res.pde_residual = res.norm0 > 0.0 ? worst / res.norm0 : worst;

  if (!res.support_ok()) throw SupportViolation(res.max_violation_x, res.max_violation);
  return res;
}

}  // namespace bgctl
