// bsk: evaluate the Bessel-Struve kernel and check, scan and bisect the
// class-membership conditions built on it.
//
// Exit codes: 0 success / condition holds, 1 condition fails or a verify
// check failed, 2 bad parameters or domain error, 3 inconclusive.

#include <algorithm>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "bsk/core_series.hpp"
#include "bsk/criteria.hpp"
#include "bsk/errors.hpp"
#include "bsk/operators.hpp"
#include "bsk/suites.hpp"

namespace {

using namespace bsk;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;
constexpr int kExitInconclusive = 3;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex17(std::complex<double> z) {
  return g17(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + g17(std::abs(z.imag())) + "i";
}

// Options shared by check, scan and critical.
struct ConditionOptions {
  std::string condition;
  std::string form = "proof";
  double lambda = 0.0;
  double alpha = 0.0;
  std::optional<double> a, b, tau;

  void attach(CLI::App* cmd, bool with_lambda_alpha = true) {
    cmd->add_option("condition", condition, "t, l, starlike, convex, jnu or qnu")->required();
    cmd->add_option("--form", form, "proof (default) or stated; affects t only");
    if (with_lambda_alpha) {
      cmd->add_option("--lambda", lambda, "lambda in [0, 1)");
      cmd->add_option("--alpha", alpha, "alpha in [0, 1)");
    }
    cmd->add_option("--A", a, "Dixit-Pal A (jnu)");
    cmd->add_option("--B", b, "Dixit-Pal B (jnu)");
    cmd->add_option("--tau", tau, "Dixit-Pal |tau| (jnu)");
  }

  ConditionSpec spec(double lam, double alp) const {
    ConditionSpec s;
    s.condition = parse_condition(condition);
    s.form = parse_form(form);
    if ((s.condition == Condition::Starlike || s.condition == Condition::Convex) && lam != 0.0) {
      throw ParameterError(std::string(to_string(s.condition)) + " has lambda = 0");
    }
    s.params = ClassParams(lam, alp);
    if (s.condition == Condition::Jnu) {
      if (!a || !b || !tau) throw ParameterError("jnu needs --A, --B and --tau");
      s.dixit_pal = DixitPalParams(*a, *b, *tau);
    }
    return s;
  }
};

struct Range {
  std::vector<double> values{0.0, 0.0, 1.0};

  std::vector<double> grid(const char* name) const {
    const double lo = values[0], hi = values[1];
    const double steps_d = values[2];
    if (steps_d < 1 || steps_d != std::floor(steps_d)) {
      throw ParameterError(std::string(name) + " steps must be a positive integer");
    }
    if (hi < lo) throw ParameterError(std::string(name) + " range needs lo <= hi");
    const int steps = static_cast<int>(steps_d);
    std::vector<double> out;
    out.reserve(steps);
    for (int i = 0; i < steps; ++i) {
      out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    }
    return out;
  }
};

void print_verdict(const ConditionSpec& spec, double nu, const MembershipVerdict& v) {
  std::cout << "condition: " << to_string(spec.condition) << '\n'
            << "form: " << to_string(v.form) << '\n'
            << "nu: " << g17(nu) << '\n'
            << "lambda: " << g17(spec.params.lambda()) << '\n'
            << "alpha: " << g17(spec.params.alpha()) << '\n'
            << "lhs: " << g17(v.lhs) << '\n'
            << "rhs: " << g17(v.rhs) << '\n'
            << "margin: " << g17(v.margin) << '\n'
            << "holds: " << (v.holds ? "true" : "false") << '\n';
}

int run_eval(double nu_value, double re, double im, double tol) {
  const KernelOrder nu(nu_value);
  const std::complex<double> z(re, im);
  const auto seq = coefficient_sequence(nu, tol, std::max(1.0, std::abs(z)));
  const auto d = kernel_derivatives(nu, z, tol);
  const auto ms = moments(nu, tol);
  std::cout << "nu: " << g17(nu_value) << '\n'
            << "z: " << complex17(z) << '\n'
            << "S: " << complex17(d[0]) << '\n'
            << "S': " << complex17(d[1]) << '\n'
            << "S'': " << complex17(d[2]) << '\n'
            << "S''': " << complex17(d[3]) << '\n'
            << "zS: " << complex17(z * d[0]) << '\n'
            << "Phi: " << complex17(z * (2.0 - d[0])) << '\n'
            << "terms: " << seq.truncation() + 1 << '\n'
            << "tail_bound: " << g17(seq.tail_bound) << '\n';
  for (int k = 0; k < 4; ++k) std::cout << 's' << k << ": " << g17(ms.s[k]) << '\n';
  for (int k = 0; k < 4; ++k) std::cout << 'm' << k << ": " << g17(ms.m[k]) << '\n';
  std::cout << "operator_valid: " << (nu.operator_valid() ? "true" : "false") << '\n';
  return 0;
}

int run_check_series(const ConditionOptions& opt, const std::string& path,
                     std::optional<double> nu) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open series file '" + path + "'");
  auto f = read_series(in);
  const auto spec = opt.spec(opt.lambda, opt.alpha);

  CoefficientSum sum;
  switch (spec.condition) {
    case Condition::T:
    case Condition::Starlike:
      sum = coefficient_sum_T(f, spec.params);
      break;
    case Condition::L:
    case Condition::Convex:
      sum = coefficient_sum_L(f, spec.params);
      break;
    case Condition::Jnu:
      if (!nu) throw ParameterError("jnu with --series-file needs --nu");
      sum = coefficient_sum_L(bessel_struve_transform(KernelOrder(*nu), f), spec.params);
      break;
    case Condition::Qnu:
      throw ParameterError("qnu is a fixed function; it takes no series file");
  }
  std::cout << "condition: " << to_string(spec.condition) << '\n'
            << "terms: " << f.truncation() << '\n'
            << "sum: " << g17(sum.sum) << '\n'
            << "tail_bound: " << g17(sum.tail_bound) << '\n'
            << "threshold: " << g17(sum.threshold) << '\n'
            << "necessary: " << (sum.necessary ? "true" : "false") << '\n';
  switch (sum.outcome) {
    case Outcome::Holds:
      std::cout << "outcome: holds\n";
      return kExitHolds;
    case Outcome::Fails:
      std::cout << "outcome: fails\n";
      return kExitFails;
    case Outcome::Inconclusive:
      std::cout << "outcome: inconclusive\n";
      return kExitInconclusive;
  }
  return kExitError;
}

struct ScanCell {
  double nu, lambda, alpha;
};

int run_scan(const ConditionOptions& opt, const Range& nu_r, const Range& alpha_r,
             const std::optional<double>& lambda_value, const std::optional<Range>& lambda_r,
             const std::string& out_path, double tol, unsigned threads) {
  const auto nus = nu_r.grid("nu");
  const auto alphas = alpha_r.grid("alpha");
  const auto lambdas =
      lambda_r ? lambda_r->grid("lambda") : std::vector<double>{lambda_value.value_or(0.0)};

  // Validate every parameter before any evaluation or file creation.
  std::vector<ScanCell> cells;
  std::vector<ConditionSpec> specs;
  for (double nu : nus) {
    require_operator_valid(KernelOrder(nu));
    for (double lam : lambdas) {
      for (double alp : alphas) {
        specs.push_back(opt.spec(lam, alp));
        cells.push_back({nu, lam, alp});
      }
    }
  }

  std::vector<MembershipVerdict> verdicts(cells.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < cells.size(); i += threads) {
            verdicts[i] = evaluate(specs[i], cells[i].nu, tol);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const std::filesystem::path target(out_path);
  const std::filesystem::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ParameterError("cannot write '" + tmp.string() + "'");
    os << "condition,form,nu,lambda,alpha,lhs,rhs,margin,holds\n";
    const auto cond = to_string(specs.front().condition);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& v = verdicts[i];
      os << cond << ',' << to_string(v.form) << ',' << g17(cells[i].nu) << ','
         << g17(cells[i].lambda) << ',' << g17(cells[i].alpha) << ',' << g17(v.lhs) << ','
         << g17(v.rhs) << ',' << g17(v.margin) << ',' << (v.holds ? "true" : "false") << '\n';
    }
    os.flush();
    if (!os) {
      std::filesystem::remove(tmp);
      throw ParameterError("failed writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, target);
  std::cout << "wrote " << cells.size() << " rows to " << target.string() << '\n';
  return 0;
}

int run_critical(const ConditionOptions& opt, double lo, double hi, double margin_tol,
                 double nu_tol, double tol) {
  const auto spec = opt.spec(opt.lambda, opt.alpha);
  const auto root = critical_nu(spec, {lo, hi}, margin_tol, nu_tol, tol);
  std::cout << "condition: " << to_string(spec.condition) << '\n'
            << "nu_star: " << g17(root.nu) << '\n'
            << "margin: " << g17(root.margin) << '\n'
            << "iterations: " << root.iterations << '\n';
  return std::abs(root.margin) <= margin_tol ? 0 : kExitInconclusive;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const auto report = run_suite(suite, seed);
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.suite << " / " << c.name << ": "
              << c.detail << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const auto& c) { return !c.passed; });
  std::cout << report.checks.size() - failed << '/' << report.checks.size() << " checks passed\n";
  return report.passed() ? 0 : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bessel-Struve kernel evaluation and class-membership checks"};
  app.set_config("--config", "", "INI/TOML file with option defaults; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  double tol = kDefaultSeriesTol;
  app.add_option("--tol", tol, "series truncation tolerance")->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "print S, zS, Phi, derivatives and moments");
  double eval_nu = 0.0, z_re = 0.0, z_im = 0.0;
  eval->add_option("--nu", eval_nu, "kernel order, > -1")->required();
  eval->add_option("--z", z_re, "real part of z")->required();
  eval->add_option("--z-imag", z_im, "imaginary part of z");

  // check
  auto* check = app.add_subcommand("check", "evaluate one membership condition");
  ConditionOptions check_opt;
  check_opt.attach(check);
  std::optional<double> check_nu;
  std::string series_file;
  check->add_option("--nu", check_nu, "kernel order, > -1/2");
  check->add_option("--series-file", series_file, "coefficient list to test instead of zS_nu");

  // scan
  auto* scan = app.add_subcommand("scan", "evaluate a condition on a parameter grid, write CSV");
  ConditionOptions scan_opt;
  scan_opt.attach(scan, false);
  Range nu_range, alpha_range;
  std::optional<double> scan_lambda;
  Range lambda_range_value;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  scan->add_option("--nu-range", nu_range.values, "lo hi steps")->expected(3)->required();
  scan->add_option("--alpha-range", alpha_range.values, "lo hi steps")->expected(3);
  auto* lambda_opt = scan->add_option("--lambda", scan_lambda, "fixed lambda");
  auto* lambda_range_opt =
      scan->add_option("--lambda-range", lambda_range_value.values, "lo hi steps")->expected(3);
  lambda_opt->excludes(lambda_range_opt);
  scan->add_option("--out", out_path, "CSV output path")->required();
  scan->add_option("--threads", threads, "worker threads");

  // critical
  auto* critical = app.add_subcommand("critical", "bisect for the nu where a condition flips");
  ConditionOptions crit_opt;
  crit_opt.attach(critical);
  double lo = 0.0, hi = 0.0, margin_tol = kDefaultMarginTol, nu_tol = kDefaultNuTol;
  critical->add_option("--lo", lo, "bracket lower end")->required();
  critical->add_option("--hi", hi, "bracket upper end")->required();
  critical->add_option("--margin-tol", margin_tol, "stop when |margin| <= this");
  critical->add_option("--nu-tol", nu_tol, "stop when the bracket is narrower than this");

  // verify
  auto* verify = app.add_subcommand("verify", "run the seeded oracle consistency suites");
  std::string suite = "all";
  std::uint64_t seed = 20240601;
  std::string suite_help = "all";
  for (const auto& n : suite_names()) suite_help += ", " + n;
  verify->add_option("--suite", suite, suite_help)->capture_default_str();
  verify->add_option("--seed", seed, "sampler seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*eval) return run_eval(eval_nu, z_re, z_im, tol);
    if (*check) {
      if (!series_file.empty()) return run_check_series(check_opt, series_file, check_nu);
      if (!check_nu) throw ParameterError("check needs --nu (or --series-file)");
      const auto spec = check_opt.spec(check_opt.lambda, check_opt.alpha);
      const auto v = evaluate(spec, *check_nu, tol);
      print_verdict(spec, *check_nu, v);
      return v.holds ? kExitHolds : kExitFails;
    }
    if (*scan) {
      std::optional<Range> lr;
      if (*lambda_range_opt) lr = lambda_range_value;
      return run_scan(scan_opt, nu_range, alpha_range, scan_lambda, lr, out_path, tol, threads);
    }
    if (*critical) return run_critical(crit_opt, lo, hi, margin_tol, nu_tol, tol);
    if (*verify) return run_verify(suite, seed);
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const BracketError& e) {
    std::cerr << "bracket error: " << e.what() << '\n';
    return kExitError;
  } catch (const MonotonicityError& e) {
    std::cerr << "monotonicity violation: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
