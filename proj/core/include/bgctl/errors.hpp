#pragma once

#include <stdexcept>
#include <string>

namespace bgctl {

// Gauss-Legendre Newton iteration failed to reach the node tolerance.
class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Gram matrix of the exponential family exceeds the configured condition
// ceiling for the selected precision.
class IllConditioned : public std::runtime_error {
public:
  explicit IllConditioned(double cond)
      : std::runtime_error("gram matrix ill-conditioned (cond ~ " + std::to_string(cond) + ")"),
        cond_(cond) {}
  double cond() const noexcept { return cond_; }

private:
  double cond_;
};

// Localized mass of an eigenfunction on the control region is numerically zero.
class ZeroMass : public std::runtime_error {
public:
  ZeroMass(int ell, double mass)
      : std::runtime_error("zero localized mass for ell=" + std::to_string(ell) + " (" +
                           std::to_string(mass) + ")"),
        ell_(ell) {}
  int ell() const noexcept { return ell_; }

private:
  int ell_;
};

class InvariantViolated : public std::runtime_error {
public:
  InvariantViolated(std::string which, double x)
      : std::runtime_error("invariant '" + which + "' violated at x=" + std::to_string(x)),
        which_(std::move(which)), x_(x) {}
  const std::string& which() const noexcept { return which_; }
  double x() const noexcept { return x_; }

private:
  std::string which_;
  double x_;
};

class SupportViolation : public std::runtime_error {
public:
  SupportViolation(double x, double value)
      : std::runtime_error("control support violated at x=" + std::to_string(x) +
                           " (value " + std::to_string(value) + ")"),
        x_(x), value_(value) {}
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

private:
  double x_;
  double value_;
};

// Generalized-eigenvalue observability problem has a singular right-hand matrix.
class SingularRegion : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace bgctl
