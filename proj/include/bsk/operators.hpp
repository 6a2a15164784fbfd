#pragma once

// Normalized power series f(z) = z + sum_{n=2}^N a_n z^n and the operators
// built on them: Hadamard product, J_nu f = zS_nu * f, Q_nu, and the
// coefficient sums that decide T_lambda(alpha) / L_lambda(alpha).

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "bsk/core_series.hpp"
#include "bsk/criteria.hpp"

namespace bsk {

/// General: coeffs hold a_n directly.
/// NegativeCoefficients: coeffs hold magnitudes b_n >= 0 of
/// f(z) = z - sum b_n z^n.
enum class SignConvention { General, NegativeCoefficients };

struct NormalizedSeries {
  /// coeffs[i] belongs to z^(i+2).
  std::vector<double> coeffs;
  SignConvention sign = SignConvention::General;
  /// Majorant of sum_{n>N} n^3 |a_n|. It dominates every coefficient sum
  /// and f, f', f'', f''' on the closed unit disk.
  double tail_bound = 0.0;
  /// Majorant of sup_{n>N} |a_n|; finite even for z/(1-z).
  double coeff_bound = 0.0;

  std::size_t truncation() const noexcept { return coeffs.size() + 1; }
  /// Signed a_n for 1 <= n <= N; a_1 = 1, zero beyond N.
  double coefficient(std::size_t n) const;
  double magnitude(std::size_t n) const;
};

/// f, f', f'', f''' at z from the truncated coefficients.
std::array<std::complex<double>, 4> evaluate_series(const NormalizedSeries& f,
                                                    std::complex<double> z);

/// z/(1-z), the identity of the Hadamard product.
NormalizedSeries identity_series(std::size_t N);
/// z S_nu(z) truncated at z^N.
NormalizedSeries kernel_series(KernelOrder nu, std::size_t N);
/// Phi(z) = z(2 - S_nu(z)), negative coefficients c_{n-1}.
NormalizedSeries phi_series(KernelOrder nu, std::size_t N);
/// Smallest N whose n^3-weighted tail of z S_nu is <= tol.
std::size_t default_truncation(KernelOrder nu, double tol = kDefaultSeriesTol);

NormalizedSeries hadamard(const NormalizedSeries& f, const NormalizedSeries& g);

/// J_nu f = z S_nu * f. Requires nu > -1/2.
NormalizedSeries bessel_struve_transform(KernelOrder nu, const NormalizedSeries& f);

/// Q_nu(z) = int_0^z (2 - S_nu(t)) dt = z - sum c_{n-1} z^n / n.
NormalizedSeries q_operator(KernelOrder nu, std::size_t N);

/// a_n = (A - B)|tau| / n for 2 <= n <= N.
NormalizedSeries rtab_extremal_sequence(const DixitPalParams& d, std::size_t N);

enum class Outcome { Holds, Fails, Inconclusive };

struct CoefficientSum {
  double sum = 0.0;
  double tail_bound = 0.0;
  double threshold = 0.0;  ///< 1 - alpha
  Outcome outcome = Outcome::Inconclusive;
  /// The comparison is also necessary (f has negative coefficients).
  bool necessary = false;

  /// Throws InconclusiveError when the tail straddles the threshold.
  bool holds() const;
};

/// sum (n lambda - lambda + 1)(n - alpha)|a_n| against 1 - alpha.
CoefficientSum coefficient_sum_T(const NormalizedSeries& f, const ClassParams& p);
/// sum n (n lambda - lambda + 1)(n - alpha)|a_n| against 1 - alpha.
CoefficientSum coefficient_sum_L(const NormalizedSeries& f, const ClassParams& p);

// Plain-text interchange: '#' comment lines, optional "# sign: general|negative",
// "# tail_bound: x" and "# coeff_bound: x" headers, then one "n a_n" pair per
// line with n = 2, 3, ... consecutive.
void write_series(std::ostream& os, const NormalizedSeries& f);
/// Throws ParameterError on malformed input.
NormalizedSeries read_series(std::istream& is);

}  // namespace bsk
