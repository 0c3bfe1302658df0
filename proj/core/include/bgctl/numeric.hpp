#pragma once

#include <boost/multiprecision/float128.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace bgctl {

// 113-bit binary floating point (libquadmath). Used wherever Gram matrices of
// decaying exponentials or localized mass matrices must be inverted.
using Extended = boost::multiprecision::float128;

enum class Precision { Double, Extended };

const char* to_string(Precision p);
Precision precision_from_string(const std::string& s);  // "double" | "dd" | "extended"

template <class Real>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

using ExtMatrix = DenseMatrix<Extended>;

template <class Real>
Eigen::MatrixXd to_eigen(const DenseMatrix<Real>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
  return out;
}

template <class Real>
DenseMatrix<Real> from_eigen(const Eigen::MatrixXd& m) {
  DenseMatrix<Real> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Real(m(i, j));
  return out;
}

template <class Real>
double norm1(const DenseMatrix<Real>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Real s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += abs(m(i, j));
    best = std::max(best, static_cast<double>(s));
  }
  return best;
}

// Inverse of a symmetric positive definite matrix via Cholesky with diagonal
// pivoting, P A P^T = L L^T. Returns false if a non-positive pivot is met.
template <class Real>
bool spd_inverse(const DenseMatrix<Real>& a, DenseMatrix<Real>& inv) {
  using std::sqrt;
  const std::size_t n = a.rows();
  DenseMatrix<Real> w = a;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (w(i, i) > w(piv, piv)) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(w(i, k), w(i, piv));
      std::swap(perm[k], perm[piv]);
    }
    if (!(w(k, k) > Real(0))) return false;
    const Real d = sqrt(w(k, k));
    w(k, k) = d;
    for (std::size_t i = k + 1; i < n; ++i) w(i, k) /= d;
    // full trailing block so that later row/column swaps see updated entries
    for (std::size_t j = k + 1; j < n; ++j)
      for (std::size_t i = k + 1; i < n; ++i) w(i, j) -= w(i, k) * w(j, k);
  }

  // Solve L L^T y = e_{perm}, column by column.
  DenseMatrix<Real> pinv(n, n);  // inverse of P A P^T
  std::vector<Real> y(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      Real s = (i == c) ? Real(1) : Real(0);
      for (std::size_t k = 0; k < i; ++k) s -= w(i, k) * y[k];
      y[i] = s / w(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Real s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= w(k, ii) * y[k];
      y[ii] = s / w(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) pinv(i, c) = y[i];
  }
  inv = DenseMatrix<Real>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(perm[i], perm[j]) = pinv(i, j);
  return true;
}

}  // namespace bgctl
