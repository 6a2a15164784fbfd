#pragma once

// Bessel-Struve kernel
//
//   S_nu(z) = sum_{n>=0} c_n(nu) z^n,
//   c_n(nu) = Gamma(nu+1) Gamma((n+1)/2) / (sqrt(pi) n! Gamma(n/2+nu+1)),
//
// defined for nu > -1. Coefficients decay factorially and the ratio
// c_{n+1}/c_n is decreasing in n, so a truncated sum is bounded by the
// geometric majorant built from the first omitted ratio.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace bsk {

inline constexpr double kDefaultSeriesTol = 1e-12;

class KernelOrder {
 public:
  /// Throws DomainError unless nu > -1 and finite.
  explicit KernelOrder(double nu);

  double value() const noexcept { return nu_; }

  /// True iff nu > -1/2, the range where the Bessel-Struve operator and
  /// the class-membership conditions are stated.
  bool operator_valid() const noexcept { return nu_ > -0.5; }

 private:
  double nu_;
};

/// c_0..c_N together with a majorant of the omitted tail
/// sum_{n>N} n^weight_degree c_n radius^n.
struct CoefficientSequence {
  KernelOrder nu;
  std::vector<double> values;
  double tail_bound = 0.0;
  double radius = 1.0;
  int weight_degree = 0;

  std::size_t truncation() const noexcept { return values.size() - 1; }
};

/// Sums that every membership condition consumes, all at z = 1:
///   m[k] = sum_{n>=2} n^k c_{n-1}(nu)
///   s[k] = S_nu^{(k)}(1)
struct MomentSet {
  std::array<double, 4> m{};
  std::array<double, 4> s{};
  double tol = kDefaultSeriesTol;
};

double kernel_coefficient(KernelOrder nu, std::size_t n);

/// c_{n+1}(nu) / c_n(nu), from the same log-Gamma differences.
double coefficient_ratio(KernelOrder nu, std::size_t n);

/// Smallest truncation whose tail majorant is <= tol. Requires 0 < tol < 1
/// and radius > 0; weight_degree in [0, 3] selects n^k weighting, which
/// covers derivative series up to S'''.
CoefficientSequence coefficient_sequence(KernelOrder nu, double tol = kDefaultSeriesTol,
                                         double radius = 1.0, int weight_degree = 0);

std::complex<double> eval_kernel(KernelOrder nu, std::complex<double> z,
                                 double tol = kDefaultSeriesTol);

/// z S_nu(z) = z + sum_{n>=2} c_{n-1} z^n.
std::complex<double> eval_normalized(KernelOrder nu, std::complex<double> z,
                                     double tol = kDefaultSeriesTol);

/// Phi(z) = z (2 - S_nu(z)) = z - sum_{n>=2} c_{n-1} z^n.
std::complex<double> eval_phi(KernelOrder nu, std::complex<double> z,
                              double tol = kDefaultSeriesTol);

/// S, S', S'', S''' at z, each summed termwise to within tol.
std::array<std::complex<double>, 4> kernel_derivatives(KernelOrder nu, std::complex<double> z,
                                                       double tol = kDefaultSeriesTol);

MomentSet moments(KernelOrder nu, double tol = kDefaultSeriesTol);

/// Majorant of sum_{n>first} n^degree c_{n-1}(nu), i.e. the tail of a
/// weighted normalized-kernel sum that stops at index `first`. Infinite
/// when the coefficient ratio has not yet dropped below one.
double shifted_weighted_tail(KernelOrder nu, std::size_t first, int degree);

}  // namespace bsk
