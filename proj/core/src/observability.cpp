#include "bgctl/observability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bgctl/errors.hpp"
#include "bgctl/moments.hpp"

namespace bgctl {

ObservabilityResult observability(int n, int ell_max, const Region& region, double T) {
  if (n < 0 || ell_max < n) throw std::invalid_argument("observability: needs 0 <= n <= ell_max");
  if (!(T > 0.0)) throw std::invalid_argument("observability: T must be > 0");
  if (region.parts().empty() || region.parts().size() > 2)
    throw std::invalid_argument("observability: region must consist of one or two intervals");
  const int N = ell_max - n + 1;
  const auto fam = ExponentialFamily::for_mode(n, N, T);
  const ExtMatrix G = gram_matrix_ext(fam);
  const ExtMatrix M = region_mass_matrix_ext(n, ell_max, region);
  ExtMatrix B(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) B(i, j) = G(i, j) * M(i, j);
  ExtMatrix Binv;
  if (!spd_inverse(B, Binv)) throw SingularRegion("observability: B is singular for this region/truncation");

  // (A, B) generalized problem == largest eigenvalue of A^{1/2} B^{-1} A^{1/2}.
  std::vector<Extended> root(N);
  for (int i = 0; i < N; ++i) root[i] = exp(-Extended(fam.lambdas[i]) * Extended(T));
  Eigen::MatrixXd S(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) S(i, j) = static_cast<double>(root[i] * Binv(i, j) * root[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SingularRegion("observability: eigen solver failed");

  ObservabilityResult r;
  r.n = n;
  r.ell_max = ell_max;
  r.T = T;
  r.constant = es.eigenvalues().maxCoeff();
  r.b_condition = norm1(B) * norm1(Binv);
  return r;
}

DissipationReport dissipation_audit(int n, int ell_max, double t, double T, std::uint64_t seed, int samples) {
  if (!(t > 0.0 && t < T)) throw std::invalid_argument("dissipation_audit: needs 0 < t < T");
  if (n < 0 || ell_max < n) throw std::invalid_argument("dissipation_audit: needs 0 <= n <= ell_max");
  DissipationReport r;
  r.n = n;
  r.ell_max = ell_max;
  r.t = t;
  r.T = T;
  r.bound = std::exp(-n * (T - t));
  const int N = ell_max - n + 1;

  auto ratio = [&](const SpectralField& g) { return evolve_free(g, T - t).norm() / g.norm(); };

  r.strict_above_bottom = true;
  for (int i = 0; i < N; ++i) {
    const double q = ratio(SpectralField::single_mode(n, n + i, N));
    if (i == 0) r.bottom_ratio = q;
    else if (!(q < r.bound)) r.strict_above_bottom = false;
    r.worst_basis_ratio = std::max(r.worst_basis_ratio, q);
  }

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    SpectralField g = SpectralField::zero(n, N);
    for (auto& c : g.coeffs) c = normal(gen);
    if (g.norm() == 0.0) continue;
    r.worst_random_ratio = std::max(r.worst_random_ratio, ratio(g));
    ++r.random_samples;
  }
  return r;
}

}  // namespace bgctl
