#include "bsk/highprec.hpp"

#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>

#include "bsk/criteria.hpp"

namespace bsk::oracle {
namespace {

TEST(HighPrecKernel, LeadingCoefficientIsExactlyOne) {
  for (double nu : {-0.9, -0.5, 0.0, 3.7}) {
    HighPrecKernel k(nu);
    EXPECT_TRUE(k.coefficient(0) == 1);
  }
}

TEST(HighPrecKernel, ExponentialOrderValues) {
  HighPrecKernel k(-0.5);
  EXPECT_LT(abs(k.coefficient(5) - HighPrec(1) / 120), HighPrec("1e-45"));
  const auto m1 = k.moment(1);
  const HighPrec want = 2 * boost::math::constants::e<HighPrec>() - 1;
  EXPECT_LT(abs(m1.value - want), HighPrec("1e-30"));
  EXPECT_LT(m1.remainder_bound, HighPrec("1e-30"));
}

// The frozen values use decimal lambda and alpha; the doubles nearest 0.3 and
// 0.2 shift the sums by a few parts in 1e17.
TEST(HighPrecKernel, FrozenTLhs) {
  HighPrecKernel k(1.0);
  const auto r = k.t_lhs(0.3, 0.2);
  EXPECT_LT(abs(r.value - HighPrec("2.626555010326234093944195")), HighPrec("1e-15"));
  EXPECT_LT(r.remainder_bound, HighPrec("1e-30"));
  EXPECT_LT(abs(k.l_lhs(0.3, 0.2).value - HighPrec("5.646084071603463023073351")),
            HighPrec("1e-15"));
  EXPECT_LT(abs(k.jnu_lhs(0.0, 0.0, 2.0).value - HighPrec("2.7375423145664222412116")),
            HighPrec("1e-21"));
}

TEST(HighPrecKernel, AgreesWithDoubleLibrary) {
  for (double nu : {-0.45, 0.0, 1.0, 4.0, 25.0}) {
    HighPrecKernel k(nu);
    const ClassParams p(0.6, 0.35);
    const KernelOrder order(nu);
    const DixitPalParams d(0.5, -0.5, 0.8);
    EXPECT_NEAR(k.t_lhs(0.6, 0.35).value.convert_to<double>(), t_condition(order, p).lhs, 1e-10);
    EXPECT_NEAR(k.t_lhs(0.6, 0.35, true).value.convert_to<double>(),
                t_condition(order, p, ConditionForm::Stated).lhs, 1e-10);
    EXPECT_NEAR(k.l_lhs(0.6, 0.35).value.convert_to<double>(), l_condition(order, p).lhs, 1e-10);
    EXPECT_NEAR(k.jnu_lhs(0.6, 0.35, d.scale()).value.convert_to<double>(),
                jnu_condition(order, p, d).lhs, 1e-10);
    EXPECT_NEAR(k.qnu_lhs(0.6, 0.35).value.convert_to<double>(), qnu_condition(order, p).lhs,
                1e-10);
  }
}

TEST(HighPrecSumOracle, Dispatch) {
  OracleQuery q;
  q.quantity = OracleQuantity::Coefficient;
  q.index = 7;
  EXPECT_LT(abs(highprec_sum_oracle(q, 2.5).value - HighPrec("3.100198412698412698412698e-6")),
            HighPrec("1e-30"));
  q.quantity = OracleQuantity::Derivative;
  q.index = 0;
  EXPECT_LT(abs(highprec_sum_oracle(q, 1.0).value - HighPrec("1.583846970096587328067743")),
            HighPrec("1e-24"));
  q.quantity = OracleQuantity::TLhs;
  q.lambda = 0.3;
  q.alpha = 0.2;
  EXPECT_LT(abs(highprec_sum_oracle(q, 1.0).value - HighPrec("2.626555010326234093944195")),
            HighPrec("1e-15"));
  q.quantity = OracleQuantity::QnuLhs;
  EXPECT_LT(abs(highprec_sum_oracle(q, 1.0).value - HighPrec("2.626555010326234093944195")),
            HighPrec("1e-15"));
}

TEST(HighPrecKernel, RejectsOrderBelowDomain) {
  EXPECT_THROW(HighPrecKernel(-1.0), std::domain_error);
}

}  // namespace
}  // namespace bsk::oracle
