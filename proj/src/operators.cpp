#include "bsk/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bsk/errors.hpp"

namespace bsk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Product of two majorants where 0 * inf means "no contribution".
double bound_product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

double cube(double n) { return n * n * n; }

// Majorant of |a_n| for n > N when the coefficients come from a decreasing
// run of kernel coefficients (ratio already below one at N).
double kernel_coeff_bound(KernelOrder nu, std::size_t N, double first_omitted, double tail) {
  return coefficient_ratio(nu, N) < 1.0 ? first_omitted : tail;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, int line_no) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParameterError("series file line " + std::to_string(line_no) + ": bad number '" +
                         std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

CoefficientSum compare(double sum, const NormalizedSeries& f, const ClassParams& p) {
  CoefficientSum r;
  r.sum = sum;
  r.tail_bound = f.tail_bound;
  r.threshold = 1.0 - p.alpha();
  r.necessary = f.sign == SignConvention::NegativeCoefficients;
  // Weights are positive, so a partial sum is a lower bound of the full one.
  if (sum > r.threshold) {
    r.outcome = Outcome::Fails;
  } else if (sum + r.tail_bound <= r.threshold) {
    r.outcome = Outcome::Holds;
  } else {
    r.outcome = Outcome::Inconclusive;
  }
  return r;
}

}  // namespace

double NormalizedSeries::coefficient(std::size_t n) const {
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  if (n > truncation()) return 0.0;
  const double v = coeffs[n - 2];
  return sign == SignConvention::NegativeCoefficients ? -v : v;
}

double NormalizedSeries::magnitude(std::size_t n) const { return std::abs(coefficient(n)); }

std::array<std::complex<double>, 4> evaluate_series(const NormalizedSeries& f,
                                                    std::complex<double> z) {
  std::array<std::complex<double>, 4> out{};
  const std::size_t N = f.truncation();
  for (int k = 0; k < 4; ++k) {
    // Horner down to n = max(k, 1); for k = 0 that leaves one factor of z.
    const std::size_t lowest = std::max<std::size_t>(static_cast<std::size_t>(k), 1);
    std::complex<double> acc = 0.0;
    for (std::size_t n = N; n >= lowest; --n) {
      double ff = 1.0;
      for (int j = 0; j < k; ++j) ff *= static_cast<double>(n - j);
      acc = acc * z + ff * f.coefficient(n);
    }
    out[k] = k == 0 ? acc * z : acc;
  }
  return out;
}

NormalizedSeries identity_series(std::size_t N) {
  NormalizedSeries f;
  f.coeffs.assign(N >= 2 ? N - 1 : 0, 1.0);
  f.tail_bound = kInf;
  f.coeff_bound = 1.0;
  return f;
}

NormalizedSeries kernel_series(KernelOrder nu, std::size_t N) {
  NormalizedSeries f;
  N = std::max<std::size_t>(N, 1);
  f.coeffs.reserve(N - 1);
  for (std::size_t n = 2; n <= N; ++n) f.coeffs.push_back(kernel_coefficient(nu, n - 1));
  f.tail_bound = shifted_weighted_tail(nu, N, 3);
  f.coeff_bound = kernel_coeff_bound(nu, N, kernel_coefficient(nu, N), f.tail_bound);
  return f;
}

NormalizedSeries phi_series(KernelOrder nu, std::size_t N) {
  auto f = kernel_series(nu, N);
  f.sign = SignConvention::NegativeCoefficients;
  return f;
}

std::size_t default_truncation(KernelOrder nu, double tol) {
  for (std::size_t N = 2; N < 10000; ++N) {
    if (shifted_weighted_tail(nu, N, 3) <= tol) return N;
  }
  throw std::logic_error("default_truncation: tail did not converge");
}

NormalizedSeries hadamard(const NormalizedSeries& f, const NormalizedSeries& g) {
  const std::size_t M = std::min(f.truncation(), g.truncation());

  // What each factor contributes beyond the common truncation M.
  auto beyond = [M](const NormalizedSeries& s) {
    double weighted = s.tail_bound;
    double sup = s.coeff_bound;
    for (std::size_t n = M + 1; n <= s.truncation(); ++n) {
      weighted += cube(static_cast<double>(n)) * s.magnitude(n);
      sup = std::max(sup, s.magnitude(n));
    }
    return std::pair{weighted, sup};
  };
  const auto [wf, sf] = beyond(f);
  const auto [wg, sg] = beyond(g);

  NormalizedSeries h;
  h.coeffs.reserve(M >= 2 ? M - 1 : 0);
  bool all_nonpositive = true;
  for (std::size_t n = 2; n <= M; ++n) {
    const double v = f.coefficient(n) * g.coefficient(n);
    all_nonpositive = all_nonpositive && v <= 0.0;
    h.coeffs.push_back(v);
  }
  const bool any_negative = f.sign == SignConvention::NegativeCoefficients ||
                            g.sign == SignConvention::NegativeCoefficients;
  if (any_negative && all_nonpositive) {
    h.sign = SignConvention::NegativeCoefficients;
    for (auto& v : h.coeffs) v = -v;
  }
  h.tail_bound = std::min(bound_product(wf, sg), bound_product(wg, sf));
  h.coeff_bound = bound_product(sf, sg);
  return h;
}

NormalizedSeries bessel_struve_transform(KernelOrder nu, const NormalizedSeries& f) {
  require_operator_valid(nu);
  return hadamard(kernel_series(nu, f.truncation()), f);
}

NormalizedSeries q_operator(KernelOrder nu, std::size_t N) {
  require_operator_valid(nu);
  NormalizedSeries f;
  f.sign = SignConvention::NegativeCoefficients;
  N = std::max<std::size_t>(N, 1);
  for (std::size_t n = 2; n <= N; ++n) {
    f.coeffs.push_back(kernel_coefficient(nu, n - 1) / static_cast<double>(n));
  }
  // n^3 * c_{n-1}/n = n^2 c_{n-1}
  f.tail_bound = shifted_weighted_tail(nu, N, 2);
  f.coeff_bound = kernel_coeff_bound(
      nu, N, kernel_coefficient(nu, N) / static_cast<double>(N + 1), f.tail_bound);
  return f;
}

NormalizedSeries rtab_extremal_sequence(const DixitPalParams& d, std::size_t N) {
  NormalizedSeries f;
  const double k = d.scale();
  for (std::size_t n = 2; n <= N; ++n) f.coeffs.push_back(k / static_cast<double>(n));
  f.tail_bound = k > 0.0 ? kInf : 0.0;
  f.coeff_bound = k / static_cast<double>(std::max<std::size_t>(N, 1) + 1);
  return f;
}

bool CoefficientSum::holds() const {
  if (outcome == Outcome::Inconclusive) {
    std::ostringstream os;
    os.precision(17);
    os << "coefficient sum " << sum << " with tail bound " << tail_bound
       << " straddles the threshold " << threshold;
    throw InconclusiveError(os.str());
  }
  return outcome == Outcome::Holds;
}

CoefficientSum coefficient_sum_T(const NormalizedSeries& f, const ClassParams& p) {
  const double l = p.lambda();
  const double a = p.alpha();
  double sum = 0.0;
  for (std::size_t n = f.truncation(); n >= 2; --n) {
    const double x = static_cast<double>(n);
    sum += (x * l - l + 1.0) * (x - a) * f.magnitude(n);
  }
  return compare(sum, f, p);
}

CoefficientSum coefficient_sum_L(const NormalizedSeries& f, const ClassParams& p) {
  const double l = p.lambda();
  const double a = p.alpha();
  double sum = 0.0;
  for (std::size_t n = f.truncation(); n >= 2; --n) {
    const double x = static_cast<double>(n);
    sum += x * (x * l - l + 1.0) * (x - a) * f.magnitude(n);
  }
  return compare(sum, f, p);
}

void write_series(std::ostream& os, const NormalizedSeries& f) {
  os << "# bsk normalized series: f(z) = z " << (f.sign == SignConvention::General ? '+' : '-')
     << " sum a_n z^n\n";
  os << "# sign: " << (f.sign == SignConvention::General ? "general" : "negative") << '\n';
  os << "# tail_bound: " << format_double(f.tail_bound) << '\n';
  os << "# coeff_bound: " << format_double(f.coeff_bound) << '\n';
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    os << (i + 2) << ' ' << format_double(f.coeffs[i]) << '\n';
  }
}

NormalizedSeries read_series(std::istream& is) {
  NormalizedSeries f;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(line.substr(0, colon));
      const auto value = trim(line.substr(colon + 1));
      if (key == "sign") {
        if (value == "general") {
          f.sign = SignConvention::General;
        } else if (value == "negative") {
          f.sign = SignConvention::NegativeCoefficients;
        } else {
          throw ParameterError("series file line " + std::to_string(line_no) +
                               ": unknown sign '" + std::string(value) + "'");
        }
      } else if (key == "tail_bound") {
        f.tail_bound = parse_double(value, line_no);
      } else if (key == "coeff_bound") {
        f.coeff_bound = parse_double(value, line_no);
      }
      continue;
    }
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ParameterError("series file line " + std::to_string(line_no) +
                           ": expected '<index> <coefficient>'");
    }
    const auto idx_text = line.substr(0, space);
    std::size_t idx = 0;
    const auto res = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (res.ec != std::errc() || res.ptr != idx_text.data() + idx_text.size()) {
      throw ParameterError("series file line " + std::to_string(line_no) + ": bad index");
    }
    if (idx != f.coeffs.size() + 2) {
      throw ParameterError("series file line " + std::to_string(line_no) + ": expected index " +
                           std::to_string(f.coeffs.size() + 2) + ", got " +
                           std::to_string(idx));
    }
    f.coeffs.push_back(parse_double(trim(line.substr(space)), line_no));
  }
  if (!(f.tail_bound >= 0.0) || !(f.coeff_bound >= 0.0)) {
    throw ParameterError("series file: bounds must be nonnegative");
  }
  if (f.sign == SignConvention::NegativeCoefficients) {
    for (double b : f.coeffs) {
      if (b < 0.0) throw ParameterError("series file: negative-sign series needs b_n >= 0");
    }
  }
  return f;
}

}  // namespace bsk
