#pragma once

// Class-membership conditions for the normalized kernel z S_nu, the
// operators J_nu and Q_nu, expressed in closed form through S_nu^{(k)}(1).
//
// Every condition has the shape lhs <= rhs. Verdicts carry the signed
// margin rhs - lhs so parameter regions can be scanned and bisected.
//
// The L condition is
//   lambda s3 + (5 lambda + 1 - lambda alpha) s2
//     + (4 lambda - 2 lambda alpha - alpha + 3) s1 + (1 - alpha) s0 <= 2(1 - alpha);
// the coefficients follow from the cubic moment identity
// m3 = s3 + 6 s2 + 7 s1 + s0 - 1.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "bsk/core_series.hpp"

namespace bsk {

inline constexpr double kDefaultMarginTol = 1e-10;
inline constexpr double kDefaultNuTol = 1e-10;

class ClassParams {
 public:
  /// Both lambda and alpha must lie in [0, 1).
  ClassParams(double lambda, double alpha);

  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }

 private:
  double lambda_;
  double alpha_;
};

/// Parameters of R^tau(A, B). Only |tau| enters any formula.
class DixitPalParams {
 public:
  /// Requires -1 <= B < A <= 1 and tau_abs > 0.
  DixitPalParams(double a, double b, double tau_abs);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double tau_abs() const noexcept { return tau_abs_; }
  /// (A - B)|tau|, the envelope scale of the coefficient bound.
  double scale() const noexcept { return (a_ - b_) * tau_abs_; }

 private:
  double a_;
  double b_;
  double tau_abs_;
};

/// ProofForm carries (1 + 2 lambda - lambda alpha) on S'(1), which is what
/// the coefficient sum reduces to. StatedForm drops the 2 lambda and is
/// kept only to reproduce the printed inequality.
enum class ConditionForm { Proof, Stated };

enum class Condition { T, L, Starlike, Convex, Jnu, Qnu };

struct MembershipVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  ConditionForm form = ConditionForm::Proof;
};

MembershipVerdict make_verdict(double lhs, double rhs, ConditionForm form = ConditionForm::Proof);

// Closed forms on a precomputed MomentSet.
MembershipVerdict t_condition(const MomentSet& ms, const ClassParams& p,
                              ConditionForm form = ConditionForm::Proof);
MembershipVerdict l_condition(const MomentSet& ms, const ClassParams& p);
MembershipVerdict jnu_condition(const MomentSet& ms, const ClassParams& p, const DixitPalParams& d);
MembershipVerdict qnu_condition(const MomentSet& ms, const ClassParams& p);

// Condition entry points. All require nu > -1/2 and throw DomainError
// otherwise.
MembershipVerdict t_condition(KernelOrder nu, const ClassParams& p,
                              ConditionForm form = ConditionForm::Proof,
                              double tol = kDefaultSeriesTol);
MembershipVerdict l_condition(KernelOrder nu, const ClassParams& p, double tol = kDefaultSeriesTol);
MembershipVerdict starlike_condition(KernelOrder nu, double alpha, double tol = kDefaultSeriesTol);
MembershipVerdict convex_condition(KernelOrder nu, double alpha, double tol = kDefaultSeriesTol);
MembershipVerdict jnu_condition(KernelOrder nu, const ClassParams& p, const DixitPalParams& d,
                                double tol = kDefaultSeriesTol);
MembershipVerdict qnu_condition(KernelOrder nu, const ClassParams& p, double tol = kDefaultSeriesTol);

/// Throws DomainError unless nu > -1/2.
void require_operator_valid(KernelOrder nu);

/// A condition together with everything except nu.
struct ConditionSpec {
  Condition condition = Condition::Starlike;
  ClassParams params{0.0, 0.0};
  ConditionForm form = ConditionForm::Proof;
  std::optional<DixitPalParams> dixit_pal;
};

/// Dispatches to the matching condition. Jnu requires dixit_pal.
MembershipVerdict evaluate(const ConditionSpec& spec, double nu, double tol = kDefaultSeriesTol);

struct Bracket {
  double lo;
  double hi;
};

struct CriticalPoint {
  double nu = 0.0;
  double margin = 0.0;
  int iterations = 0;
};

/// Bisection on an arbitrary margin function of nu, with the same
/// contract as critical_nu.
CriticalPoint bisect_margin(const std::function<double(double)>& margin, Bracket bracket,
                            double margin_tol = kDefaultMarginTol, double nu_tol = kDefaultNuTol);

/// Bisects for the nu where the margin changes sign. Requires
/// margin(lo) < 0 < margin(hi); throws BracketError otherwise, and
/// MonotonicityError if an interior margin falls outside the margins at
/// the current endpoints.
CriticalPoint critical_nu(const ConditionSpec& spec, Bracket bracket,
                          double margin_tol = kDefaultMarginTol, double nu_tol = kDefaultNuTol,
                          double series_tol = kDefaultSeriesTol);

std::string_view to_string(Condition c);
std::string_view to_string(ConditionForm f);
/// Accepts the lower-case names printed by to_string; throws ParameterError.
Condition parse_condition(std::string_view name);
ConditionForm parse_form(std::string_view name);

}  // namespace bsk
