#include "bgctl/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bgctl/errors.hpp"
#include "bgctl/legendre.hpp"

namespace bgctl {

const char* to_string(Precision p) { return p == Precision::Double ? "double" : "dd"; }

Precision precision_from_string(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "dd" || s == "extended") return Precision::Extended;
  throw std::invalid_argument("unknown precision '" + s + "' (expected double or dd)");
}

ExponentialFamily ExponentialFamily::for_mode(int n, int N, double T, double quiet) {
  if (n < 0 || N < 1 || !(T > 0.0))
    throw std::invalid_argument("exponential family needs n >= 0, N >= 1, T > 0");
  if (!(quiet >= 0.0 && quiet < T)) throw std::invalid_argument("quiet window must lie in [0, T)");
  ExponentialFamily fam;
  fam.n = n;
  fam.T = T;
  fam.quiet = quiet;
  fam.lambdas.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) fam.lambdas.push_back(eigenvalue(ModeIndex{n + i, n}));
  return fam;
}

Extended exp_pairing(Extended a, Extended b, Extended T, Extended t) {
  using boost::multiprecision::exp;
  using boost::multiprecision::expm1;
  const Extended s = a + b;
  const Extended lead = exp(-a * (T - t));
  if (s == 0) return lead * t;
  return lead * (-expm1(-s * t)) / s;
}

Eigen::MatrixXd gram_matrix(const ExponentialFamily& fam) {
  const int N = fam.size();
  const double end = fam.support_end();
  Eigen::MatrixXd g(N, N);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      const double s = fam.lambdas[j] + fam.lambdas[k];
      const double body = (s == 0.0) ? end : -std::expm1(-s * end) / s;
      g(j, k) = std::exp(-s * fam.quiet) * body;
    }
  }
  return g;
}

ExtMatrix gram_matrix_ext(const ExponentialFamily& fam) {
  const auto N = static_cast<std::size_t>(fam.size());
  ExtMatrix g(N, N);
  const Extended T = fam.T;
  const Extended end = fam.support_end();
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k)
      g(j, k) = exp(-Extended(fam.lambdas[k]) * (T - end)) * exp_pairing(fam.lambdas[j], fam.lambdas[k], T, end);
  return g;
}

double default_condition_ceiling(Precision p) { return p == Precision::Double ? 1e12 : 1e24; }

std::vector<double> BiorthogonalFamily::q_norms_squared() const {
  std::vector<double> out(dual.rows());
  for (std::size_t k = 0; k < dual.rows(); ++k) out[k] = static_cast<double>(dual(k, k));
  return out;
}

Extended BiorthogonalFamily::q_value(int k, double t) const {
  if (t > family.support_end()) return 0;
  Extended acc = 0;
  const Extended tt = t;
  const Extended T = family.T;
  for (std::size_t j = 0; j < dual.cols(); ++j)
    acc += dual(k, j) * exp(-Extended(family.lambdas[j]) * (T - tt));
  return acc;
}

std::vector<Extended> BiorthogonalFamily::pairing(double mu, double t) const {
  const std::size_t N = dual.rows();
  std::vector<Extended> basis(N);
  const Extended T = family.T;
  // q vanishes after support_end; the remaining time only damps by exp(-mu (t - end)).
  const double end = std::min(t, family.support_end());
  const Extended damp = exp(-Extended(mu) * (Extended(t) - Extended(end)));
  for (std::size_t j = 0; j < N; ++j) basis[j] = damp * exp_pairing(family.lambdas[j], mu, T, end);
  std::vector<Extended> out(N, Extended(0));
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < N; ++j) out[k] += dual(k, j) * basis[j];
  return out;
}

BiorthogonalFamily biorthogonal(const ExponentialFamily& fam, const BiorthogonalOptions& opts) {
  const double ceiling =
      opts.condition_ceiling > 0.0 ? opts.condition_ceiling : default_condition_ceiling(opts.precision);
  BiorthogonalFamily bio;
  bio.family = fam;
  bio.precision = opts.precision;

  // On (0, T - quiet) the family is exp(-lambda_j quiet) times the plain family
  // with horizon T - quiet. Invert that well-scaled Gram matrix and undo the
  // diagonal scaling: D = S Dplain S, S = diag(exp(lambda quiet)).
  ExponentialFamily plain = fam;
  plain.T = fam.support_end();
  plain.quiet = 0.0;
  const ExtMatrix gplain = gram_matrix_ext(plain);
  ExtMatrix dplain;
  if (opts.precision == Precision::Double) {
    const DenseMatrix<double> g = from_eigen<double>(gram_matrix(plain));
    DenseMatrix<double> inv;
    if (!spd_inverse(g, inv)) throw IllConditioned(std::numeric_limits<double>::infinity());
    bio.condition_estimate = norm1(g) * norm1(inv);
    dplain = ExtMatrix(inv.rows(), inv.cols());
    for (std::size_t i = 0; i < inv.rows(); ++i)
      for (std::size_t j = 0; j < inv.cols(); ++j) dplain(i, j) = inv(i, j);
  } else {
    if (!spd_inverse(gplain, dplain)) throw IllConditioned(std::numeric_limits<double>::infinity());
    bio.condition_estimate = norm1(gplain) * norm1(dplain);
  }
  if (!(bio.condition_estimate <= ceiling)) throw IllConditioned(bio.condition_estimate);

  const std::size_t N = gplain.rows();
  // T - support_end() differs from quiet by a rounding; use the former, as
  // every pairing and q evaluation does, or cond(G) amplifies the mismatch
  const Extended window = Extended(fam.T) - Extended(fam.support_end());
  std::vector<Extended> scale(N);
  for (std::size_t j = 0; j < N; ++j) scale[j] = exp(Extended(fam.lambdas[j]) * window);
  bio.gram = ExtMatrix(N, N);
  bio.dual = ExtMatrix(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      bio.gram(i, j) = gplain(i, j) / (scale[i] * scale[j]);
      bio.dual(i, j) = dplain(i, j) * scale[i] * scale[j];
    }
  }

  Extended worst = 0;
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = 0; l < N; ++l) {
      Extended s = 0;
      for (std::size_t j = 0; j < N; ++j) s += bio.dual(k, j) * bio.gram(j, l);
      if (k == l) s -= 1;
      worst = std::max(worst, Extended(abs(s)));
    }
  }
  bio.residual = static_cast<double>(worst);
  return bio;
}

double resolve_quiet_window(const SynthesisOptions& opts, int n, int N, double T) {
  if (opts.quiet_window >= 0.0) return opts.quiet_window;
  const double first_unsynthesized = eigenvalue(ModeIndex{n + N, n});
  return std::min(opts.quiet_suppression / first_unsynthesized, kMaxQuietFraction * T);
}

double ControlPlan::value_unmasked(double t, double x) const {
  const auto col = eigenfunction_column(n, n + N() - 1, x);
  double acc = 0.0;
  for (int l = 0; l < N(); ++l) {
    if (alphas[l] == 0.0) continue;
    acc += alphas[l] * static_cast<double>(family.q_value(l, t)) * col[l];
  }
  return acc;
}

double ControlPlan::value(double t, double x) const { return region.contains(x) ? value_unmasked(t, x) : 0.0; }

ControlPlan synthesize_on_region(const SpectralField& field0, const Region& region, double T, int N,
                                 const SynthesisOptions& opts) {
  if (N < 1) throw std::invalid_argument("synthesize: N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("synthesize: T must be > 0");
  if (opts.check_factor < 1) throw std::invalid_argument("synthesize: check_factor must be >= 1");
  const int n = field0.n;
  const int check = std::max(opts.check_factor * N, field0.truncation());
  const SpectralField f0 = field0.resized(check);

  ControlPlan plan;
  plan.n = n;
  plan.T = T;
  plan.region = region;
  plan.family = biorthogonal(ExponentialFamily::for_mode(n, N, T, resolve_quiet_window(opts, n, N, T)),
                             {opts.precision, opts.condition_ceiling});

  const ExtMatrix mass = region_mass_matrix_ext(n, n + N - 1, region);
  plan.masses.resize(N);
  plan.alphas.resize(N);
  for (int i = 0; i < N; ++i) {
    const double m = static_cast<double>(mass(i, i));
    if (!(m > 1e-300)) throw ZeroMass(n + i, m);
    plan.masses[i] = m;
    const double lam = plan.lambdas()[i];
    plan.alphas[i] = static_cast<double>(-exp(Extended(-lam) * Extended(T)) * Extended(f0.coeffs[i]) / mass(i, i));
  }

  Extended cost2 = 0;
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l)
      cost2 += Extended(plan.alphas[k]) * Extended(plan.alphas[l]) * plan.family.dual(k, l) * mass(k, l);
  plan.cost = cost2 > 0 ? static_cast<double>(sqrt(cost2)) : 0.0;

  plan.terminal = duhamel_terminal(f0, plan, T).coeffs;
  double head = 0.0, tail = 0.0;
  for (int k = 0; k < check; ++k) {
    const double c2 = plan.terminal[k] * plan.terminal[k];
    (k < N ? head : tail) += c2;
  }
  plan.moment_residual = std::sqrt(head);
  plan.leakage = std::sqrt(tail);
  plan.terminal_residual = std::sqrt(head + tail);
  return plan;
}

ControlPlan synthesize(const SpectralField& field0, const Crown& crown, double T, int N,
                       const SynthesisOptions& opts) {
  if (!crown.touches_pole())
    throw std::invalid_argument("synthesize: moment method requires a pole-touching crown (b = pi/2)");
  auto plan = synthesize_on_region(field0, Region::from_crown(crown), T, N, opts);
  plan.crown = crown;
  return plan;
}

bool GapAuditReport::ok() const {
  return gaps_ok && std::all_of(tail.begin(), tail.end(), [](const TailRow& r) { return r.certified; });
}

GapAuditReport gap_audit(const ExponentialFamily& fam, const std::vector<double>& etas) {
  GapAuditReport rep;
  rep.n = fam.n;
  rep.count = fam.size();
  std::vector<long long> sigma;
  for (int j = 0; j < fam.size(); ++j) sigma.push_back(eigenvalue_exact(ModeIndex{fam.n + j, fam.n}));
  rep.first = sigma.empty() ? 0 : sigma.front();
  rep.min_gap = std::numeric_limits<long long>::max();
  bool gaps_ok = !sigma.empty() && rep.first >= 1;
  for (std::size_t j = 0; j + 1 < sigma.size(); ++j) {
    const long long gap = sigma[j + 1] - sigma[j];
    // sigma_{j+1} - sigma_j = 2(n + j) with j 1-based
    if (gap != 2LL * (fam.n + static_cast<long long>(j) + 1) || gap < 2) gaps_ok = false;
    rep.min_gap = std::min(rep.min_gap, gap);
  }
  if (sigma.size() < 2) rep.min_gap = 0;
  rep.gaps_ok = gaps_ok;

  for (double eta : etas) {
    // sum_{j >= N} 1/(j-1)^2 = sum_{k >= N-1} 1/k^2 <= 1/(N-2) for N >= 3
    GapAuditReport::TailRow row{eta, 0, false};
    if (eta > 0.0) {
      row.n_eta = 2 + static_cast<int>(std::ceil(1.0 / eta));
      row.n_eta = std::max(row.n_eta, 3);
      row.certified = static_cast<double>(row.n_eta - 2) * eta >= 1.0;
    }
    rep.tail.push_back(row);
  }
  return rep;
}

}  // namespace bgctl
