#include "bgctl/quadrature.hpp"

#include <stdexcept>
#include <string>

#include "bgctl/detail/recurrence.hpp"
#include "bgctl/errors.hpp"

namespace bgctl {

QuadratureRule gauss_legendre(double lo, double hi, int npoints) {
  if (!(lo < hi)) throw std::invalid_argument("gauss_legendre: need lo < hi");
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: need npoints >= 1");

  QuadratureRule rule;
  rule.lo = lo;
  rule.hi = hi;
  rule.exact_degree = 2 * npoints - 1;
  if (!detail::gauss_legendre_rule<double>(lo, hi, npoints, 1e-15, rule.nodes, rule.weights)) {
    throw QuadratureError("gauss_legendre: Newton iteration did not converge for npoints=" +
                          std::to_string(npoints));
  }
  return rule;
}

}  // namespace bgctl
