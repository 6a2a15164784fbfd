#include "bsk/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "bsk/core_series.hpp"
#include "bsk/criteria.hpp"
#include "bsk/errors.hpp"
#include "bsk/highprec.hpp"
#include "bsk/operators.hpp"
#include "bsk/verifier.hpp"

namespace bsk {

namespace {

using Sampler = std::mt19937_64;

constexpr double kGateMargin = 0.05;
constexpr int kGatedTuples = 30;
constexpr int kNecessityTuples = 10;
constexpr int kMaxDraws = 20000;
// Golden value of the starlike (alpha = 0) boundary, from 50-digit bisection.
constexpr double kStarlikeCriticalNu = 2.0381807051618718;

double uniform(Sampler& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::complex<double> disk_point(Sampler& rng) {
  const double r = std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class Collector {
 public:
  Collector(SuiteReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}
  void add(std::string name, bool passed, std::string detail) {
    report_.checks.push_back({suite_, std::move(name), passed, std::move(detail)});
  }

 private:
  SuiteReport& report_;
  std::string suite_;
};

const std::vector<double>& nu_grid() {
  static const std::vector<double> grid{-0.49, -0.25, 0.0, 0.5, 1.0, 2.0, 10.0};
  return grid;
}

void closed_form_suite(SuiteReport& report, std::uint64_t seed) {
  Collector out(report, "closed-form");
  Sampler rng(seed);
  double err_exp = 0.0, err_shift = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto z = i == 0 ? std::complex<double>(0.0) : disk_point(rng);
    err_exp = std::max(err_exp, std::abs(eval_kernel(KernelOrder(-0.5), z) - std::exp(z)));
    const auto expected = z == 0.0 ? std::complex<double>(1.0) : (std::exp(z) - 1.0) / z;
    err_shift = std::max(err_shift, std::abs(eval_kernel(KernelOrder(0.5), z) - expected));
  }
  out.add("S_{-1/2} = e^z", err_exp <= 1e-12, "max error " + fmt(err_exp));
  out.add("S_{1/2} = (e^z - 1)/z", err_shift <= 1e-12, "max error " + fmt(err_shift));
}

void moments_suite(SuiteReport& report, std::uint64_t) {
  Collector out(report, "moments");
  for (double nu : nu_grid()) {
    const auto ms = moments(KernelOrder(nu), 1e-12);
    const double e0 = std::abs(ms.m[0] - (ms.s[0] - 1.0));
    const double e1 = std::abs(ms.m[1] - (ms.s[1] + ms.s[0] - 1.0));
    const double e2 = std::abs(ms.m[2] - (ms.s[2] + 3.0 * ms.s[1] + ms.s[0] - 1.0));
    const double e3 =
        std::abs(ms.m[3] - (ms.s[3] + 6.0 * ms.s[2] + 7.0 * ms.s[1] + ms.s[0] - 1.0));
    const double worst = std::max({e0, e1, e2, e3});
    out.add("identities at nu = " + fmt(nu), worst <= 1e-12, "max deviation " + fmt(worst));
  }
  const auto ms = moments(KernelOrder(-0.5), 1e-12);
  const double e = std::numbers::e;
  const std::array<double, 4> expected{e - 1.0, 2.0 * e - 1.0, 5.0 * e - 1.0, 15.0 * e - 1.0};
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ms.m[k] - expected[k]));
  out.add("nu = -1/2 moments (e-1, 2e-1, 5e-1, 15e-1)", worst <= 1e-12, "max error " + fmt(worst));
}

void oracle_suite(SuiteReport& report, std::uint64_t seed) {
  Collector out(report, "oracle");
  Sampler rng(seed);
  double worst = 0.0, worst_q = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double nu = uniform(rng, -0.49, 30.0);
    const ClassParams p(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0));
    const DixitPalParams d(1.0, -1.0, uniform(rng, 0.1, 1.0));
    const auto ms = moments(KernelOrder(nu));
    oracle::HighPrecKernel hp(nu);
    const auto diff = [&](double fast, const oracle::OracleValue& slow) {
      return std::abs(fast - slow.value.convert_to<double>());
    };
    worst = std::max({worst,
                      diff(t_condition(ms, p).lhs, hp.t_lhs(p.lambda(), p.alpha())),
                      diff(t_condition(ms, p, ConditionForm::Stated).lhs,
                           hp.t_lhs(p.lambda(), p.alpha(), true)),
                      diff(l_condition(ms, p).lhs, hp.l_lhs(p.lambda(), p.alpha())),
                      diff(jnu_condition(ms, p, d).lhs,
                           hp.jnu_lhs(p.lambda(), p.alpha(), d.scale())),
                      diff(qnu_condition(ms, p).lhs, hp.qnu_lhs(p.lambda(), p.alpha()))});
    worst_q = std::max(worst_q, std::abs(qnu_condition(ms, p).lhs - t_condition(ms, p).lhs));
  }
  out.add("condition lhs vs 50-digit summation (100 tuples)", worst <= 1e-10,
          "max deviation " + fmt(worst));
  out.add("Q_nu lhs == proof-form T lhs", worst_q <= 1e-12, "max deviation " + fmt(worst_q));
}

// The stated and proof forms differ only in the S'(1) coefficient, by 2 lambda.
void forms_suite(SuiteReport& report, std::uint64_t) {
  Collector out(report, "forms");
  int ordered = 0, strict = 0, coincide = 0, reproduced = 0, cells = 0, positive = 0, zero = 0;
  for (double nu : {-0.49, 0.0, 1.0, 5.0}) {
    const auto ms = moments(KernelOrder(nu));
    for (double alpha : {0.0, 0.5}) {
      for (int i = 0; i < 20; ++i) {
        const ClassParams p(i / 20.0, alpha);
        const double proof = t_condition(ms, p, ConditionForm::Proof).lhs;
        const double stated = t_condition(ms, p, ConditionForm::Stated).lhs;
        ++cells;
        if (stated <= proof) ++ordered;
        if (i > 0) {
          ++positive;
          if (stated < proof) ++strict;
          continue;
        }
        ++zero;
        if (stated == proof) ++coincide;
        const double starlike = ms.s[1] + (1.0 - alpha) * ms.s[0];
        const double via_api = starlike_condition(KernelOrder(nu), alpha).lhs;
        if (std::abs(proof - starlike) <= 1e-12 && std::abs(via_api - starlike) <= 1e-12) {
          ++reproduced;
        }
      }
    }
  }
  out.add("stated lhs <= proof lhs", ordered == cells,
          std::to_string(ordered) + "/" + std::to_string(cells) + " grid cells");
  out.add("strict for lambda > 0", strict == positive,
          std::to_string(strict) + "/" + std::to_string(positive) + " grid cells");
  out.add("forms coincide at lambda = 0", coincide == zero,
          std::to_string(coincide) + "/" + std::to_string(zero) + " grid cells");
  out.add("lambda = 0 reproduces the starlike condition", reproduced == zero,
          std::to_string(reproduced) + "/" + std::to_string(zero) + " grid cells");
}

// Draws until `accept` has fired `count` times; reports a shortfall as a
// failed check rather than looping forever.
int gated_draws(Sampler& rng, int count, const std::function<bool(Sampler&)>& accept) {
  int accepted = 0;
  for (int draws = 0; draws < kMaxDraws && accepted < count; ++draws) {
    if (accept(rng)) ++accepted;
  }
  return accepted;
}

void sufficiency_suite(SuiteReport& report, std::uint64_t seed) {
  Collector out(report, "sufficiency");
  Sampler rng(seed);
  const DiskSampling circle(0.99, 512);

  int failures = 0;
  double tightest = 1e300;
  int got = gated_draws(rng, kGatedTuples, [&](Sampler& g) {
    const KernelOrder nu(uniform(g, -0.49, 30.0));
    const ClassParams p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0));
    if (t_condition(nu, p).margin < kGateMargin) return false;
    const auto f = kernel_series(nu, default_truncation(nu));
    const double gap = min_real_part_T(f, p.lambda(), circle) - p.alpha();
    tightest = std::min(tightest, gap);
    if (!(gap > 0.0)) ++failures;
    return true;
  });
  out.add("T: disk minimum exceeds alpha", got == kGatedTuples && failures == 0,
          std::to_string(got) + " tuples, smallest gap " + fmt(tightest));

  failures = 0;
  tightest = 1e300;
  got = gated_draws(rng, kGatedTuples, [&](Sampler& g) {
    const KernelOrder nu(uniform(g, -0.49, 30.0));
    const ClassParams p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0));
    if (l_condition(nu, p).margin < kGateMargin) return false;
    const auto f = kernel_series(nu, default_truncation(nu));
    const double gap = min_real_part_L(f, p.lambda(), circle) - p.alpha();
    tightest = std::min(tightest, gap);
    if (!(gap > 0.0)) ++failures;
    return true;
  });
  out.add("L: disk minimum exceeds alpha", got == kGatedTuples && failures == 0,
          std::to_string(got) + " tuples, smallest gap " + fmt(tightest));

  failures = 0;
  tightest = 1e300;
  got = gated_draws(rng, kGatedTuples, [&](Sampler& g) {
    const KernelOrder nu(uniform(g, -0.49, 30.0));
    const ClassParams p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0));
    const double a = uniform(g, -1.0, 1.0);
    const DixitPalParams d(a, uniform(g, -1.0, a), uniform(g, 0.05, 2.0));
    if (jnu_condition(nu, p, d).margin < kGateMargin) return false;
    const auto image =
        bessel_struve_transform(nu, rtab_extremal_sequence(d, default_truncation(nu)));
    const auto sum = coefficient_sum_L(image, p);
    tightest = std::min(tightest, sum.threshold - sum.sum);
    if (sum.outcome != Outcome::Holds) ++failures;
    return true;
  });
  out.add("J_nu: extremal coefficient sum <= 1 - alpha", got == kGatedTuples && failures == 0,
          std::to_string(got) + " tuples, smallest slack " + fmt(tightest));

  failures = 0;
  tightest = 1e300;
  got = gated_draws(rng, kGatedTuples, [&](Sampler& g) {
    const KernelOrder nu(uniform(g, -0.49, 30.0));
    const ClassParams p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0));
    if (qnu_condition(nu, p).margin < kGateMargin) return false;
    const auto sum = coefficient_sum_L(q_operator(nu, default_truncation(nu)), p);
    tightest = std::min(tightest, sum.threshold - sum.sum);
    if (sum.outcome != Outcome::Holds) ++failures;
    return true;
  });
  out.add("Q_nu: coefficient sum <= 1 - alpha", got == kGatedTuples && failures == 0,
          std::to_string(got) + " tuples, smallest slack " + fmt(tightest));
}

void necessity_suite(SuiteReport& report, std::uint64_t seed) {
  Collector out(report, "necessity");
  Sampler rng(seed);
  static constexpr std::array<double, 4> kAxis{0.9, 0.99, 0.999, 0.9999};

  int failures = 0;
  const int got = gated_draws(rng, kNecessityTuples, [&](Sampler& g) {
    const KernelOrder nu(uniform(g, -0.49, 10.0));
    const ClassParams p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0));
    const auto phi = phi_series(nu, default_truncation(nu));
    if (coefficient_sum_T(phi, p).sum < 1.05 * (1.0 - p.alpha())) return false;
    // The ratio has a pole on (0, 1) when this denominator sum reaches one.
    double weighted = 0.0;
    for (std::size_t n = 2; n <= phi.truncation(); ++n) {
      weighted += (n * p.lambda() - p.lambda() + 1.0) * phi.magnitude(n);
    }
    if (weighted >= 1.0) return false;
    if (!(min_real_part_T_on_axis(phi, p.lambda(), kAxis) < p.alpha())) ++failures;
    return true;
  });
  out.add("Phi_nu: real-axis ratio drops below alpha", got == kNecessityTuples && failures == 0,
          std::to_string(got) + " tuples, " + std::to_string(failures) + " failures");
}

void ode_suite(SuiteReport& report, std::uint64_t seed) {
  Collector out(report, "ode");
  Sampler rng(seed);
  std::vector<double> grid{-0.5};
  grid.insert(grid.end(), nu_grid().begin(), nu_grid().end());
  double worst = 0.0;
  for (double nu : grid) {
    for (int i = 0; i < 100; ++i) {
      const auto z = i == 0 ? std::complex<double>(0.0) : disk_point(rng);
      worst = std::max(worst, ode_residual(KernelOrder(nu), z, 1e-12));
    }
  }
  out.add("Bessel-Struve ODE residual", worst <= 1e-10, "max residual " + fmt(worst));
}

void critical_suite(SuiteReport& report, std::uint64_t) {
  Collector out(report, "critical");
  ConditionSpec spec;
  spec.condition = Condition::Starlike;
  const auto root = critical_nu(spec, {0.6, 20.0});
  out.add("starlike alpha = 0 converges", std::abs(root.margin) <= 1e-10,
          "nu* = " + fmt(root.nu) + ", margin " + fmt(root.margin));
  out.add("starlike alpha = 0 matches golden value",
          std::abs(root.nu - kStarlikeCriticalNu) <= 1e-8,
          "deviation " + fmt(std::abs(root.nu - kStarlikeCriticalNu)));

  // Independent bisection on the 50-digit margin 2 - S'(1) - S(1).
  double lo = 0.6, hi = 20.0;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    oracle::HighPrecKernel hp(mid);
    const auto margin = 2 - hp.derivative_at_one(1).value - hp.derivative_at_one(0).value;
    (margin < 0 ? lo : hi) = mid;
  }
  const double hp_root = 0.5 * (lo + hi);
  out.add("starlike alpha = 0 matches 50-digit bisection", std::abs(root.nu - hp_root) <= 1e-8,
          "oracle nu* = " + fmt(hp_root));
}

using SuiteFn = void (*)(SuiteReport&, std::uint64_t);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"closed-form", closed_form_suite}, {"moments", moments_suite},
      {"forms", forms_suite},             {"oracle", oracle_suite},
      {"sufficiency", sufficiency_suite}, {"necessity", necessity_suite},
      {"ode", ode_suite},                 {"critical", critical_suite}};
  return suites;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  SuiteReport report;
  if (name == "all") {
    for (const auto& [suite, fn] : registry()) fn(report, seed);
    return report;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw ParameterError("unknown suite '" + std::string(name) + "'");
  }
  it->second(report, seed);
  return report;
}

}  // namespace bsk
