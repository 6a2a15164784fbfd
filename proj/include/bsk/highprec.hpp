#pragma once

// Brute-force 50-digit reference values for the kernel sums. Coefficients
// come straight from the Gamma formula in decimal arithmetic and every
// condition lhs is summed termwise from its coefficient-sum definition, so
// nothing here shares a code path with the double-precision library.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cstddef>
#include <vector>

namespace bsk::oracle {

using HighPrec = boost::multiprecision::cpp_dec_float_50;

struct OracleValue {
  HighPrec value;
  HighPrec remainder_bound;
};

/// Kernel of a fixed order nu > -1 with a lazily grown coefficient cache.
/// Not thread-safe; use one instance per thread.
class HighPrecKernel {
 public:
  explicit HighPrecKernel(double nu);
  explicit HighPrecKernel(const HighPrec& nu);

  const HighPrec& nu() const noexcept { return nu_; }

  const HighPrec& coefficient(std::size_t n);
  /// sum_{n>=2} n^k c_{n-1}
  OracleValue moment(int k);
  /// S^{(k)}(1) = sum_{n>=k} n(n-1)...(n-k+1) c_n
  OracleValue derivative_at_one(int k);

  /// (1 - alpha) + sum_{n>=2} (n lambda - lambda + 1)(n - alpha) c_{n-1};
  /// the stated form subtracts 2 lambda S'(1).
  OracleValue t_lhs(double lambda, double alpha, bool stated_form = false);
  /// (1 - alpha) + sum_{n>=2} n (n lambda - lambda + 1)(n - alpha) c_{n-1}
  OracleValue l_lhs(double lambda, double alpha);
  /// scale * sum_{n>=2} n (n lambda - lambda + 1)(n - alpha) c_{n-1} (scale/n)
  OracleValue jnu_lhs(double lambda, double alpha, double scale);
  /// (1 - alpha) + sum_{n>=2} n (n lambda - lambda + 1)(n - alpha) c_{n-1} / n
  OracleValue qnu_lhs(double lambda, double alpha);

 private:
  template <class Term>
  OracleValue sum_from(std::size_t first, Term term);

  HighPrec nu_;
  HighPrec gamma_nu_plus_one_;
  HighPrec sqrt_pi_;
  std::vector<HighPrec> cache_;
};

enum class OracleQuantity { Coefficient, Moment, Derivative, TLhs, TLhsStated, LLhs, JnuLhs, QnuLhs };

struct OracleQuery {
  OracleQuantity quantity = OracleQuantity::Coefficient;
  int index = 0;  ///< n for Coefficient, k for Moment / Derivative
  double lambda = 0.0;
  double alpha = 0.0;
  double scale = 1.0;  ///< (A - B)|tau| for JnuLhs
};

OracleValue highprec_sum_oracle(const OracleQuery& query, double nu);

}  // namespace bsk::oracle
