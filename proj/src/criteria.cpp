#include "bsk/criteria.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "bsk/errors.hpp"

namespace bsk {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1), got " << v;
    throw ParameterError(os.str());
  }
}

}  // namespace

ClassParams::ClassParams(double lambda, double alpha) : lambda_(lambda), alpha_(alpha) {
  check_unit_interval(lambda, "lambda");
  check_unit_interval(alpha, "alpha");
}

DixitPalParams::DixitPalParams(double a, double b, double tau_abs)
    : a_(a), b_(b), tau_abs_(tau_abs) {
  if (!(-1.0 <= b && b < a && a <= 1.0)) {
    std::ostringstream os;
    os << "Dixit-Pal parameters need -1 <= B < A <= 1, got A = " << a << ", B = " << b;
    throw ParameterError(os.str());
  }
  if (!(tau_abs > 0.0) || !std::isfinite(tau_abs)) {
    throw ParameterError("|tau| must be positive and finite");
  }
}

MembershipVerdict make_verdict(double lhs, double rhs, ConditionForm form) {
  const double margin = rhs - lhs;
  return {lhs, rhs, margin, margin >= 0.0, form};
}

void require_operator_valid(KernelOrder nu) {
  if (!nu.operator_valid()) {
    throw DomainError("condition requires nu > -1/2, got " + std::to_string(nu.value()));
  }
}

MembershipVerdict t_condition(const MomentSet& ms, const ClassParams& p, ConditionForm form) {
  const double l = p.lambda();
  const double a = p.alpha();
  const double s1_coeff = form == ConditionForm::Proof ? 1.0 + 2.0 * l - l * a : 1.0 - l * a;
  const double lhs = l * ms.s[2] + s1_coeff * ms.s[1] + (1.0 - a) * ms.s[0];
  return make_verdict(lhs, 2.0 * (1.0 - a), form);
}

MembershipVerdict l_condition(const MomentSet& ms, const ClassParams& p) {
  const double l = p.lambda();
  const double a = p.alpha();
  const double lhs = l * ms.s[3] + (5.0 * l + 1.0 - l * a) * ms.s[2] +
                     (4.0 * l - 2.0 * l * a - a + 3.0) * ms.s[1] + (1.0 - a) * ms.s[0];
  return make_verdict(lhs, 2.0 * (1.0 - a));
}

MembershipVerdict jnu_condition(const MomentSet& ms, const ClassParams& p,
                                const DixitPalParams& d) {
  const double l = p.lambda();
  const double a = p.alpha();
  const double inner =
      l * ms.s[2] + (1.0 + 2.0 * l - l * a) * ms.s[1] + (1.0 - a) * (ms.s[0] - 1.0);
  return make_verdict(d.scale() * inner, 1.0 - a);
}

MembershipVerdict qnu_condition(const MomentSet& ms, const ClassParams& p) {
  const double l = p.lambda();
  const double a = p.alpha();
  const double lhs = l * ms.s[2] + (2.0 * l - l * a + 1.0) * ms.s[1] + (1.0 - a) * ms.s[0];
  return make_verdict(lhs, 2.0 * (1.0 - a));
}

MembershipVerdict t_condition(KernelOrder nu, const ClassParams& p, ConditionForm form,
                              double tol) {
  require_operator_valid(nu);
  return t_condition(moments(nu, tol), p, form);
}

MembershipVerdict l_condition(KernelOrder nu, const ClassParams& p, double tol) {
  require_operator_valid(nu);
  return l_condition(moments(nu, tol), p);
}

MembershipVerdict starlike_condition(KernelOrder nu, double alpha, double tol) {
  return t_condition(nu, ClassParams(0.0, alpha), ConditionForm::Proof, tol);
}

MembershipVerdict convex_condition(KernelOrder nu, double alpha, double tol) {
  return l_condition(nu, ClassParams(0.0, alpha), tol);
}

MembershipVerdict jnu_condition(KernelOrder nu, const ClassParams& p, const DixitPalParams& d,
                                double tol) {
  require_operator_valid(nu);
  return jnu_condition(moments(nu, tol), p, d);
}

MembershipVerdict qnu_condition(KernelOrder nu, const ClassParams& p, double tol) {
  require_operator_valid(nu);
  return qnu_condition(moments(nu, tol), p);
}

MembershipVerdict evaluate(const ConditionSpec& spec, double nu_value, double tol) {
  const KernelOrder nu(nu_value);
  const auto& p = spec.params;
  switch (spec.condition) {
    case Condition::T:
      return t_condition(nu, p, spec.form, tol);
    case Condition::L:
      return l_condition(nu, p, tol);
    case Condition::Starlike:
      return starlike_condition(nu, p.alpha(), tol);
    case Condition::Convex:
      return convex_condition(nu, p.alpha(), tol);
    case Condition::Jnu:
      if (!spec.dixit_pal) throw ParameterError("jnu condition needs A, B and |tau|");
      return jnu_condition(nu, p, *spec.dixit_pal, tol);
    case Condition::Qnu:
      return qnu_condition(nu, p, tol);
  }
  throw ParameterError("unknown condition");
}

CriticalPoint critical_nu(const ConditionSpec& spec, Bracket bracket, double margin_tol,
                          double nu_tol, double series_tol) {
  return bisect_margin([&](double nu) { return evaluate(spec, nu, series_tol).margin; }, bracket,
                       margin_tol, nu_tol);
}

CriticalPoint bisect_margin(const std::function<double(double)>& margin, Bracket bracket,
                            double margin_tol, double nu_tol) {
  if (!(bracket.lo < bracket.hi)) throw ParameterError("bracket needs lo < hi");
  if (!(margin_tol > 0.0) || !(nu_tol > 0.0)) throw ParameterError("tolerances must be positive");

  double lo = bracket.lo;
  double hi = bracket.hi;
  double m_lo = margin(lo);
  double m_hi = margin(hi);
  if (!(m_lo < 0.0 && m_hi > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "bracket [" << lo << ", " << hi << "] does not straddle zero: margin(" << lo
       << ") = " << m_lo << ", margin(" << hi << ") = " << m_hi;
    throw BracketError(os.str(), m_lo, m_hi);
  }

  const int max_iter = static_cast<int>(std::ceil(std::log2((hi - lo) / nu_tol))) + 1;
  CriticalPoint best{std::abs(m_lo) < std::abs(m_hi) ? lo : hi,
                     std::abs(m_lo) < std::abs(m_hi) ? m_lo : m_hi, 0};
  for (int it = 1; it <= max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double m = margin(mid);
    if (m < m_lo || m > m_hi) {
      std::ostringstream os;
      os.precision(17);
      os << "margin not increasing in nu: margin(" << lo << ") = " << m_lo << ", margin(" << mid
         << ") = " << m << ", margin(" << hi << ") = " << m_hi;
      throw MonotonicityError(os.str());
    }
    if (std::abs(m) < std::abs(best.margin)) best = {mid, m, it};
    best.iterations = it;
    if (std::abs(m) <= margin_tol) return {mid, m, it};
    if (m < 0.0) {
      lo = mid;
      m_lo = m;
    } else {
      hi = mid;
      m_hi = m;
    }
    if (hi - lo <= nu_tol) break;
  }
  return best;
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::T: return "t";
    case Condition::L: return "l";
    case Condition::Starlike: return "starlike";
    case Condition::Convex: return "convex";
    case Condition::Jnu: return "jnu";
    case Condition::Qnu: return "qnu";
  }
  return "?";
}

std::string_view to_string(ConditionForm f) {
  return f == ConditionForm::Proof ? "proof" : "stated";
}

Condition parse_condition(std::string_view name) {
  for (auto c : {Condition::T, Condition::L, Condition::Starlike, Condition::Convex,
                 Condition::Jnu, Condition::Qnu}) {
    if (name == to_string(c)) return c;
  }
  throw ParameterError("unknown condition '" + std::string(name) + "'");
}

ConditionForm parse_form(std::string_view name) {
  if (name == "proof") return ConditionForm::Proof;
  if (name == "stated") return ConditionForm::Stated;
  throw ParameterError("unknown condition form '" + std::string(name) + "'");
}

}  // namespace bsk
