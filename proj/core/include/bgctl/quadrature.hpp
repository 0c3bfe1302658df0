#pragma once

#include <vector>

namespace bgctl {

struct QuadratureRule {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  int exact_degree = 0;         // 2 * npoints - 1

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

// Gauss-Legendre rule on [lo, hi] with npoints nodes. Nodes are Newton-refined
// roots of P_npoints; throws QuadratureError if a root does not converge.
QuadratureRule gauss_legendre(double lo, double hi, int npoints);

// Smallest Gauss-Legendre size integrating polynomials of the given degree exactly.
inline int gauss_points_for_degree(int degree) { return degree / 2 + 1; }

}  // namespace bgctl
