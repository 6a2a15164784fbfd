#include "bsk/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bsk/errors.hpp"

namespace bsk {

namespace {

std::complex<double> checked_ratio(std::complex<double> num, std::complex<double> den,
                                   std::complex<double> z, double floor, const char* which) {
  if (!(std::abs(den) >= floor)) {
    std::ostringstream os;
    os.precision(17);
    os << which << " denominator |" << std::abs(den) << "| below floor " << floor << " at z = ("
       << z.real() << ", " << z.imag() << ")";
    throw DenominatorError(os.str(), z);
  }
  return num / den;
}

}  // namespace

DiskSampling::DiskSampling(double radius, int num_points, double denominator_floor)
    : radius_(radius), num_points_(num_points), floor_(denominator_floor) {
  if (!(radius > 0.0 && radius < 1.0)) throw ParameterError("sampling radius must lie in (0, 1)");
  if (num_points < 64) throw ParameterError("disk sampling needs at least 64 points");
  if (!(denominator_floor > 0.0)) throw ParameterError("denominator floor must be positive");
}

std::complex<double> DiskSampling::point(int k) const {
  const double theta = 2.0 * std::numbers::pi * k / num_points_;
  return std::polar(radius_, theta);
}

std::complex<double> t_ratio(const NormalizedSeries& f, double lambda, std::complex<double> z,
                             double denominator_floor) {
  const auto d = evaluate_series(f, z);
  const auto num = z * d[1] + lambda * z * z * d[2];
  const auto den = (1.0 - lambda) * d[0] + lambda * z * d[1];
  return checked_ratio(num, den, z, denominator_floor, "T-ratio");
}

std::complex<double> l_ratio(const NormalizedSeries& f, double lambda, std::complex<double> z,
                             double denominator_floor) {
  const auto d = evaluate_series(f, z);
  const auto z2 = z * z;
  const auto num = lambda * z2 * z * d[3] + (1.0 + 2.0 * lambda) * z2 * d[2] + z * d[1];
  const auto den = z * d[1] + lambda * z2 * d[2];
  return checked_ratio(num, den, z, denominator_floor, "L-ratio");
}

double min_real_part_T(const NormalizedSeries& f, double lambda, const DiskSampling& s) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < s.num_points(); ++k) {
    best = std::min(best, t_ratio(f, lambda, s.point(k), s.denominator_floor()).real());
  }
  return best;
}

double min_real_part_L(const NormalizedSeries& f, double lambda, const DiskSampling& s) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < s.num_points(); ++k) {
    best = std::min(best, l_ratio(f, lambda, s.point(k), s.denominator_floor()).real());
  }
  return best;
}

double min_real_part_T_on_axis(const NormalizedSeries& f, double lambda,
                               std::span<const double> points, double denominator_floor) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : points) best = std::min(best, t_ratio(f, lambda, x, denominator_floor).real());
  return best;
}

double min_real_part_L_on_axis(const NormalizedSeries& f, double lambda,
                               std::span<const double> points, double denominator_floor) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : points) best = std::min(best, l_ratio(f, lambda, x, denominator_floor).real());
  return best;
}

double ode_residual(KernelOrder nu, std::complex<double> z, double tol) {
  if (nu.value() < -0.5) throw DomainError("ODE residual requires nu >= -1/2");
  const auto seq = coefficient_sequence(nu, tol, std::max(1.0, std::abs(z)), 3);
  const auto& c = seq.values;

  std::complex<double> s = 0.0, s2 = 0.0, quotient = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) {
    const double x = static_cast<double>(n);
    s = s * z + c[n];
    if (n >= 2) {
      s2 = s2 * z + x * (x - 1.0) * c[n];
      quotient = quotient * z + x * c[n];
    }
  }
  return std::abs(s2 + (2.0 * nu.value() + 1.0) * quotient - s);
}

}  // namespace bsk
