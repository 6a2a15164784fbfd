#include "bsk/core_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bsk/errors.hpp"

namespace bsk {

namespace {

constexpr std::size_t kMaxTerms = 10000;

// Evaluated in long double: the log-Gamma terms reach ~700 in magnitude
// before the coefficients underflow, and a double ulp there is already
// ~1e-13 relative after exponentiation.
long double log_coefficient(long double nu, std::size_t n) {
  const long double x = static_cast<long double>(n);
  return std::lgamma(nu + 1.0L) + std::lgamma((x + 1.0L) / 2.0L) - std::lgamma(x + 1.0L) -
         std::lgamma(x / 2.0L + nu + 1.0L) - 0.5L * std::log(std::numbers::pi_v<long double>);
}

double weight(std::size_t n, int degree) {
  double w = 1.0;
  for (int i = 0; i < degree; ++i) w *= static_cast<double>(n);
  return w;
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw ParameterError("series tolerance must lie in (0, 1), got " + std::to_string(tol));
  }
}

// Horner evaluation of sum_{n>=k} n(n-1)...(n-k+1) c_n z^(n-k).
std::complex<double> derivative_sum(const std::vector<double>& c, std::complex<double> z, int k) {
  std::complex<double> acc = 0.0;
  for (std::size_t n = c.size(); n-- > static_cast<std::size_t>(k);) {
    double ff = 1.0;
    for (int j = 0; j < k; ++j) ff *= static_cast<double>(n - j);
    acc = acc * z + ff * c[n];
  }
  return acc;
}

}  // namespace

KernelOrder::KernelOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || !(nu > -1.0)) {
    throw DomainError("kernel order must satisfy nu > -1, got " + std::to_string(nu));
  }
}

double kernel_coefficient(KernelOrder nu, std::size_t n) {
  if (n == 0) return 1.0;
  return static_cast<double>(std::exp(log_coefficient(nu.value(), n)));
}

double coefficient_ratio(KernelOrder nu, std::size_t n) {
  const long double x = static_cast<long double>(n);
  const long double v = nu.value();
  const long double log_ratio = std::lgamma(x / 2.0L + 1.0L) - std::lgamma((x + 1.0L) / 2.0L) +
                                std::lgamma(x / 2.0L + v + 1.0L) -
                                std::lgamma((x + 1.0L) / 2.0L + v + 1.0L) - std::log(x + 1.0L);
  return static_cast<double>(std::exp(log_ratio));
}

CoefficientSequence coefficient_sequence(KernelOrder nu, double tol, double radius,
                                         int weight_degree) {
  check_tol(tol);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("radius must be positive and finite");
  }
  if (weight_degree < 0 || weight_degree > 3) {
    throw ParameterError("weight degree must lie in [0, 3]");
  }

  CoefficientSequence seq{nu, {1.0}, 0.0, radius, weight_degree};
  seq.values.reserve(64);
  const std::size_t first = std::max<std::size_t>(1, static_cast<std::size_t>(weight_degree));
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    seq.values.push_back(kernel_coefficient(nu, n));
    if (n < first) continue;
    // Weighted terms t_n = n^d c_n r^n have a decreasing ratio, so once
    // q = t_{n+1}/t_n < 1 the tail is at most t_n q / (1 - q).
    const double t_n = weight(n, weight_degree) * seq.values[n] * std::pow(radius, n);
    const double q = std::pow(1.0 + 1.0 / static_cast<double>(n), weight_degree) *
                     coefficient_ratio(nu, n) * radius;
    if (q >= 1.0) continue;
    const double tail = t_n * q / (1.0 - q);
    if (tail <= tol) {
      seq.tail_bound = tail;
      return seq;
    }
  }
  throw std::logic_error("coefficient ratio did not drop below one within " +
                         std::to_string(kMaxTerms) + " terms");
}

std::complex<double> eval_kernel(KernelOrder nu, std::complex<double> z, double tol) {
  const auto seq = coefficient_sequence(nu, tol, std::max(1.0, std::abs(z)));
  return derivative_sum(seq.values, z, 0);
}

std::complex<double> eval_normalized(KernelOrder nu, std::complex<double> z, double tol) {
  return z * eval_kernel(nu, z, tol);
}

std::complex<double> eval_phi(KernelOrder nu, std::complex<double> z, double tol) {
  return z * (2.0 - eval_kernel(nu, z, tol));
}

std::array<std::complex<double>, 4> kernel_derivatives(KernelOrder nu, std::complex<double> z,
                                                       double tol) {
  const auto seq = coefficient_sequence(nu, tol, std::max(1.0, std::abs(z)), 3);
  std::array<std::complex<double>, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = derivative_sum(seq.values, z, k);
  return out;
}

MomentSet moments(KernelOrder nu, double tol) {
  if (!(tol > 0.0)) throw ParameterError("moment tolerance must be positive");
  // (j+1)^3 <= 8 j^3 for j >= 1 bounds the m3 tail by eight times the
  // cubic-weighted coefficient tail; every other sum is dominated by it.
  const auto seq = coefficient_sequence(nu, std::min(tol, 0.5) / 8.0, 1.0, 3);
  const auto& c = seq.values;

  MomentSet ms;
  ms.tol = tol;
  // Smallest terms first.
  for (std::size_t j = c.size(); j-- > 1;) {
    const double n = static_cast<double>(j + 1);
    ms.m[0] += c[j];
    ms.m[1] += n * c[j];
    ms.m[2] += n * n * c[j];
    ms.m[3] += n * n * n * c[j];
  }
  for (int k = 0; k < 4; ++k) ms.s[k] = derivative_sum(c, 1.0, k).real();
  return ms;
}

double shifted_weighted_tail(KernelOrder nu, std::size_t first, int degree) {
  // sum_{n>first} n^d c_{n-1} = sum_{j>=first} (j+1)^d c_j
  const double t = weight(first + 1, degree) * kernel_coefficient(nu, first);
  if (t == 0.0) return 0.0;
  const double q = std::pow(static_cast<double>(first + 2) / static_cast<double>(first + 1), degree) *
                   coefficient_ratio(nu, first);
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  return t / (1.0 - q);
}

}  // namespace bsk
