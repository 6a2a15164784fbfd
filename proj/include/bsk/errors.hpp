#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bsk {

/// Kernel order outside the range an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Class or operator parameters outside their admissible ranges.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bisection bracket whose endpoint margins do not straddle zero.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, double margin_lo, double margin_hi)
      : std::runtime_error(what), margin_lo_(margin_lo), margin_hi_(margin_hi) {}
  double margin_lo() const noexcept { return margin_lo_; }
  double margin_hi() const noexcept { return margin_hi_; }

 private:
  double margin_lo_;
  double margin_hi_;
};

/// A margin that failed to increase in nu while bisecting.
class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation tail large enough to flip a coefficient-sum comparison.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vanishing denominator in a class ratio at a sample point.
class DenominatorError : public std::runtime_error {
 public:
  DenominatorError(const std::string& what, std::complex<double> z)
      : std::runtime_error(what), z_(z) {}
  std::complex<double> where() const noexcept { return z_; }

 private:
  std::complex<double> z_;
};

}  // namespace bsk
