#include "bsk/highprec.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <stdexcept>

namespace bsk::oracle {

namespace {

// Far below the 1e-30 remainder promise; terms decay factorially so the
// extra terms are cheap.
const HighPrec kNegligible("1e-45");

}  // namespace

HighPrecKernel::HighPrecKernel(double nu) : HighPrecKernel(HighPrec(nu)) {}

HighPrecKernel::HighPrecKernel(const HighPrec& nu)
    : nu_(nu),
      gamma_nu_plus_one_(0),
      sqrt_pi_(sqrt(boost::math::constants::pi<HighPrec>())) {
  if (!(nu_ > -1)) throw std::domain_error("oracle kernel needs nu > -1");
  gamma_nu_plus_one_ = boost::math::tgamma(nu_ + 1);
}

const HighPrec& HighPrecKernel::coefficient(std::size_t n) {
  if (cache_.empty()) cache_.push_back(1);  // Gamma(nu+1)Gamma(1/2) / (sqrt(pi) Gamma(nu+1))
  while (cache_.size() <= n) {
    const HighPrec m(static_cast<unsigned long long>(cache_.size()));
    const HighPrec value = gamma_nu_plus_one_ * boost::math::tgamma((m + 1) / 2) /
                           (sqrt_pi_ * boost::math::tgamma(m + 1) *
                            boost::math::tgamma(m / 2 + nu_ + 1));
    cache_.push_back(value);
  }
  return cache_[n];
}

template <class Term>
OracleValue HighPrecKernel::sum_from(std::size_t first, Term term) {
  HighPrec total = 0;
  for (std::size_t n = first;; ++n) {
    const HighPrec t = term(n);
    total += t;
    if (n < first + 2 || t > kNegligible) continue;
    // Ratios of these terms decrease in n, so t q / (1 - q) bounds the rest.
    const HighPrec next = term(n + 1);
    if (t == 0) return {total, 0};
    const HighPrec q = next / t;
    if (q < HighPrec("0.5")) return {total, t * q / (1 - q)};
  }
}

OracleValue HighPrecKernel::moment(int k) {
  return sum_from(2, [&](std::size_t n) { return pow(HighPrec(n), k) * coefficient(n - 1); });
}

OracleValue HighPrecKernel::derivative_at_one(int k) {
  return sum_from(static_cast<std::size_t>(k), [&](std::size_t n) {
    HighPrec ff = 1;
    for (int j = 0; j < k; ++j) ff *= HighPrec(static_cast<unsigned long long>(n - j));
    return ff * coefficient(n);
  });
}

OracleValue HighPrecKernel::t_lhs(double lambda, double alpha, bool stated_form) {
  const HighPrec l(lambda), a(alpha);
  auto r = sum_from(2, [&](std::size_t n) {
    const HighPrec x(static_cast<unsigned long long>(n));
    return (x * l - l + 1) * (x - a) * coefficient(n - 1);
  });
  r.value += 1 - a;
  if (stated_form) {
    const auto s1 = derivative_at_one(1);
    r.value -= 2 * l * s1.value;
    r.remainder_bound += 2 * l * s1.remainder_bound;
  }
  return r;
}

OracleValue HighPrecKernel::l_lhs(double lambda, double alpha) {
  const HighPrec l(lambda), a(alpha);
  auto r = sum_from(2, [&](std::size_t n) {
    const HighPrec x(static_cast<unsigned long long>(n));
    return x * (x * l - l + 1) * (x - a) * coefficient(n - 1);
  });
  r.value += 1 - a;
  return r;
}

OracleValue HighPrecKernel::jnu_lhs(double lambda, double alpha, double scale) {
  const HighPrec l(lambda), a(alpha), k(scale);
  return sum_from(2, [&](std::size_t n) {
    const HighPrec x(static_cast<unsigned long long>(n));
    return x * (x * l - l + 1) * (x - a) * coefficient(n - 1) * (k / x);
  });
}

OracleValue HighPrecKernel::qnu_lhs(double lambda, double alpha) {
  const HighPrec l(lambda), a(alpha);
  auto r = sum_from(2, [&](std::size_t n) {
    const HighPrec x(static_cast<unsigned long long>(n));
    return x * (x * l - l + 1) * (x - a) * (coefficient(n - 1) / x);
  });
  r.value += 1 - a;
  return r;
}

OracleValue highprec_sum_oracle(const OracleQuery& q, double nu) {
  HighPrecKernel kernel(nu);
  switch (q.quantity) {
    case OracleQuantity::Coefficient:
      return {kernel.coefficient(static_cast<std::size_t>(q.index)), 0};
    case OracleQuantity::Moment:
      return kernel.moment(q.index);
    case OracleQuantity::Derivative:
      return kernel.derivative_at_one(q.index);
    case OracleQuantity::TLhs:
      return kernel.t_lhs(q.lambda, q.alpha);
    case OracleQuantity::TLhsStated:
      return kernel.t_lhs(q.lambda, q.alpha, true);
    case OracleQuantity::LLhs:
      return kernel.l_lhs(q.lambda, q.alpha);
    case OracleQuantity::JnuLhs:
      return kernel.jnu_lhs(q.lambda, q.alpha, q.scale);
    case OracleQuantity::QnuLhs:
      return kernel.qnu_lhs(q.lambda, q.alpha);
  }
  throw std::invalid_argument("unknown oracle quantity");
}

}  // namespace bsk::oracle
