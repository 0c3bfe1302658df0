#include "bgctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bgctl/detail/recurrence.hpp"
#include "bgctl/errors.hpp"
#include "bgctl/legendre.hpp"
#include "bgctl/moments.hpp"
#include "bgctl/quadrature.hpp"

namespace bgctl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

Crown Crown::make(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= kHalfPi + 1e-15)) {
    throw std::invalid_argument("crown requires 0 <= a < b <= pi/2 (a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ")");
  }
  return Crown{a, std::min(b, kHalfPi)};
}

double Crown::alpha_agmon() const { return -std::log(std::cos(a)); }

bool Crown::touches_pole() const { return std::abs(b - kHalfPi) <= 1e-12; }

Region::Region(std::vector<Interval> parts) : parts_(std::move(parts)) {
  for (const auto& p : parts_) {
    if (!(p.lo < p.hi) || p.lo < -kHalfPi - 1e-15 || p.hi > kHalfPi + 1e-15)
      throw std::invalid_argument("region interval must satisfy -pi/2 <= lo < hi <= pi/2");
  }
  std::sort(parts_.begin(), parts_.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  for (std::size_t i = 1; i < parts_.size(); ++i)
    if (parts_[i].lo < parts_[i - 1].hi) throw std::invalid_argument("region intervals overlap");
}

Region Region::from_crown(const Crown& c) { return Region({{c.a, c.b}}); }

Region Region::symmetric_strip(double b) {
  if (!(b > 0.0 && b <= kHalfPi)) throw std::invalid_argument("symmetric strip needs 0 < b <= pi/2");
  return Region({{-b, 0.0}, {0.0, b}});
}

Region Region::full() { return Region({{-kHalfPi, kHalfPi}}); }

bool Region::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return x > p.lo && x < p.hi; });
}

double Region::measure() const {
  double m = 0.0;
  for (const auto& p : parts_) m += p.hi - p.lo;
  return m;
}

SpectralField SpectralField::zero(int n, int truncation) {
  if (n < 0 || truncation < 1) throw std::invalid_argument("SpectralField needs n >= 0, truncation >= 1");
  return SpectralField{n, std::vector<double>(static_cast<std::size_t>(truncation), 0.0)};
}

SpectralField SpectralField::single_mode(int n, int ell, int truncation) {
  auto f = zero(n, truncation);
  if (ell < n || ell >= n + truncation) throw std::invalid_argument("single_mode: ell outside truncation");
  f.coeffs[static_cast<std::size_t>(ell - n)] = 1.0;
  return f;
}

double SpectralField::norm() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double SpectralField::value(double x) const {
  const auto col = eigenfunction_column(n, ell_max(), x);
  double v = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * col[i];
  return v;
}

SpectralField SpectralField::resized(int truncation) const {
  SpectralField out = zero(n, truncation);
  const auto m = std::min(coeffs.size(), out.coeffs.size());
  std::copy_n(coeffs.begin(), m, out.coeffs.begin());
  return out;
}

TimeGrid TimeGrid::uniform(double T, int count) {
  if (!(T > 0.0) || count < 2) throw std::invalid_argument("TimeGrid::uniform needs T > 0, count >= 2");
  TimeGrid g;
  g.T = T;
  g.samples.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g.samples[i] = T * i / (count - 1);
  return g;
}

namespace {

template <class Real>
DenseMatrix<Real> mass_matrix_impl(int n, int ell_max, const Region& region, Real tol, std::size_t rows = 0) {
  using std::sin;
  using std::sqrt;
  if (n < 0 || ell_max < n) throw std::invalid_argument("mass matrix needs ell_max >= n >= 0");
  const auto count = static_cast<std::size_t>(ell_max - n + 1);
  const bool full = rows == 0 || rows >= count;
  if (full) rows = count;
  DenseMatrix<Real> m(rows, count);
  // integrand is a polynomial of degree 2*ell_max in t = sin x
  const int npoints = ell_max + n + 4;
  std::vector<Real> nodes, weights, col(count);
  for (const auto& part : region.parts()) {
    const Real lo = sin(Real(part.lo));
    const Real hi = sin(Real(part.hi));
    if (!detail::gauss_legendre_rule<Real>(lo, hi, npoints, tol, nodes, weights))
      throw QuadratureError("mass matrix quadrature failed to converge");
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const Real t = nodes[q];
      const Real s = sqrt((1 - t) * (1 + t));
      detail::legendre_column<Real>(n, t, s, col.data(), count);
      for (std::size_t i = 0; i < rows; ++i) {
        const Real wi = weights[q] * col[i];
        for (std::size_t j = full ? 0 : i; j < (full ? i + 1 : count); ++j) m(i, j) += wi * col[j];
      }
    }
  }
  if (full) {
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < i; ++j) m(j, i) = m(i, j);
  } else {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
  }
  return m;
}

}  // namespace

Eigen::MatrixXd region_mass_matrix(int n, int ell_max, const Region& region) {
  return to_eigen(mass_matrix_impl<double>(n, ell_max, region, 1e-15));
}

ExtMatrix region_mass_matrix_ext(int n, int ell_max, const Region& region) {
  return mass_matrix_impl<Extended>(n, ell_max, region, Extended("1e-32"));
}

ExtMatrix region_mass_rows_ext(int n, int ell_max, const Region& region, int rows) {
  if (rows < 1) throw std::invalid_argument("region_mass_rows_ext needs rows >= 1");
  return mass_matrix_impl<Extended>(n, ell_max, region, Extended("1e-32"), static_cast<std::size_t>(rows));
}

Eigen::MatrixXd crown_mass_matrix(int n, int ell_max, const Crown& crown) {
  return region_mass_matrix(n, ell_max, Region::from_crown(crown));
}

std::vector<double> localized_masses(int n, int ell_max, const Region& region) {
  if (n < 0 || ell_max < n) throw std::invalid_argument("localized_masses needs ell_max >= n >= 0");
  const auto count = static_cast<std::size_t>(ell_max - n + 1);
  std::vector<double> out(count, 0.0), col(count);
  const int npoints = ell_max + n + 4;
  for (const auto& part : region.parts()) {
    const auto rule = gauss_legendre(std::sin(part.lo), std::sin(part.hi), npoints);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.nodes[q];
      normalized_legendre_column(n, t, std::sqrt((1 - t) * (1 + t)), col);
      for (std::size_t i = 0; i < count; ++i) out[i] += rule.weights[q] * col[i] * col[i];
    }
  }
  return out;
}

std::vector<double> orthonormality_residuals(int n, int ell_max) {
  const Eigen::MatrixXd g = region_mass_matrix(n, ell_max, Region::full());
  std::vector<double> out(static_cast<std::size_t>(g.rows()), 0.0);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      out[i] = std::max(out[i], std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return out;
}

SpectralField evolve_free(const SpectralField& field, double dt) {
  if (dt < 0.0) throw std::invalid_argument("evolve_free needs dt >= 0");
  SpectralField out = field;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const double lam = eigenvalue(ModeIndex{field.n + static_cast<int>(i), field.n});
    out.coeffs[i] *= std::exp(-lam * dt);
  }
  return out;
}

namespace {
void check_duhamel(const SpectralField& field0, const ControlPlan& plan) {
  if (field0.n != plan.n) throw std::invalid_argument("duhamel: field order differs from plan order");
  if (field0.truncation() < plan.N())
    throw std::invalid_argument("duhamel: field truncation " + std::to_string(field0.truncation()) +
                                " is smaller than control truncation " + std::to_string(plan.N()));
}

SpectralField duhamel_with_mass(const SpectralField& field0, const ControlPlan& plan, double t,
                                const ExtMatrix& mass) {
  if (t < 0.0 || t > plan.T * (1 + 1e-14)) throw std::invalid_argument("duhamel: t outside [0, T]");
  const int n = field0.n;
  const int K = field0.truncation();
  SpectralField out = field0;
  for (int k = 0; k < K; ++k) {
    const double lam = eigenvalue(ModeIndex{n + k, n});
    Extended acc = Extended(field0.coeffs[k]) * exp(Extended(-lam) * Extended(t));
    const auto pair = plan.family.pairing(lam, t);
    for (int l = 0; l < plan.N(); ++l) acc += Extended(plan.alphas[l]) * mass(l, k) * pair[l];
    out.coeffs[k] = static_cast<double>(acc);
  }
  return out;
}
}  // namespace

SpectralField duhamel_at(const SpectralField& field0, const ControlPlan& plan, double t) {
  check_duhamel(field0, plan);
  const ExtMatrix mass = region_mass_rows_ext(field0.n, field0.ell_max(), plan.region, plan.N());
  return duhamel_with_mass(field0, plan, t, mass);
}

std::vector<SpectralField> duhamel_trajectory(const SpectralField& field0, const ControlPlan& plan,
                                              const std::vector<double>& times) {
  check_duhamel(field0, plan);
  const int n = field0.n;
  const int K = field0.truncation();
  const int N = plan.N();
  const ExtMatrix mass = region_mass_rows_ext(n, field0.ell_max(), plan.region, N);
  const auto& fam = plan.family.family;
  // gamma(k, j) = sum_l alpha_l M_lk D_lj: the control enters mode k through
  // sum_j gamma(k, j) int_0^t exp(-lambda_j (T - s)) exp(-mu_k (t - s)) ds
  ExtMatrix gamma(K, N);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < N; ++j) {
      Extended acc = 0;
      for (int l = 0; l < N; ++l)
        if (plan.alphas[l] != 0.0) acc += Extended(plan.alphas[l]) * mass(l, k) * plan.family.dual(l, j);
      gamma(k, j) = acc;
    }
  std::vector<Extended> mu(K), lam(N);
  for (int k = 0; k < K; ++k) mu[k] = eigenvalue(ModeIndex{n + k, n});
  for (int j = 0; j < N; ++j) lam[j] = fam.lambdas[j];
  ExtMatrix inv_sum(K, N);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < N; ++j) inv_sum(k, j) = 1 / (mu[k] + lam[j]);

  std::vector<SpectralField> out;
  out.reserve(times.size());
  std::vector<Extended> lead(N), ej(N);
  for (double t : times) {
    if (t < 0.0 || t > plan.T * (1 + 1e-14)) throw std::invalid_argument("duhamel: t outside [0, T]");
    // q vanishes after support_end; past it every mode only decays
    const Extended tt = t;
    const Extended end = std::min(t, fam.support_end());
    for (int j = 0; j < N; ++j) {
      lead[j] = exp(-lam[j] * (Extended(fam.T) - end));
      ej[j] = exp(-lam[j] * end);
    }
    SpectralField f = field0;
    for (int k = 0; k < K; ++k) {
      const Extended ek = exp(-mu[k] * end);
      const Extended damp = exp(-mu[k] * (tt - end));
      Extended acc = 0;
      for (int j = 0; j < N; ++j) acc += gamma(k, j) * lead[j] * (1 - ej[j] * ek) * inv_sum(k, j);
      f.coeffs[k] = static_cast<double>(Extended(field0.coeffs[k]) * exp(-mu[k] * tt) + damp * acc);
    }
    out.push_back(std::move(f));
  }
  return out;
}

SpectralField duhamel_terminal(const SpectralField& field0, const ControlPlan& plan, double T) {
  if (std::abs(T - plan.T) > 1e-12 * std::max(1.0, plan.T))
    throw std::invalid_argument("duhamel_terminal: horizon differs from control horizon");
  return duhamel_at(field0, plan, plan.T);
}

}  // namespace bgctl
