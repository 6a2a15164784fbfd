#pragma once

// Direct evaluation of the analytic class criteria. These are numerical
// evidence only: a circle of sample points, not a global minimization.

#include <complex>
#include <span>

#include "bsk/core_series.hpp"
#include "bsk/operators.hpp"

namespace bsk {

class DiskSampling {
 public:
  /// radius in (0, 1), num_points >= 64, denominator_floor > 0.
  DiskSampling(double radius, int num_points, double denominator_floor = 1e-12);

  double radius() const noexcept { return radius_; }
  int num_points() const noexcept { return num_points_; }
  double denominator_floor() const noexcept { return floor_; }
  /// k-th of num_points equally spaced points on |z| = radius.
  std::complex<double> point(int k) const;

 private:
  double radius_;
  int num_points_;
  double floor_;
};

/// (z f' + lambda z^2 f'') / ((1 - lambda) f + lambda z f')
std::complex<double> t_ratio(const NormalizedSeries& f, double lambda, std::complex<double> z,
                             double denominator_floor = 1e-12);
/// (lambda z^3 f''' + (1 + 2 lambda) z^2 f'' + z f') / (z f' + lambda z^2 f'')
std::complex<double> l_ratio(const NormalizedSeries& f, double lambda, std::complex<double> z,
                             double denominator_floor = 1e-12);

/// Minimum of Re t_ratio over the sampled circle. Throws DenominatorError
/// naming the offending point when the denominator drops below the floor.
double min_real_part_T(const NormalizedSeries& f, double lambda, const DiskSampling& s);
double min_real_part_L(const NormalizedSeries& f, double lambda, const DiskSampling& s);

/// Minimum of Re t_ratio over real points 0 < x < 1.
double min_real_part_T_on_axis(const NormalizedSeries& f, double lambda,
                               std::span<const double> points, double denominator_floor = 1e-12);
double min_real_part_L_on_axis(const NormalizedSeries& f, double lambda,
                               std::span<const double> points, double denominator_floor = 1e-12);

/// |S'' + (2 nu + 1)(S' - S'(0))/z - S| at z, with the difference quotient
/// summed termwise (so z = 0 is the series limit). Accepts nu >= -1/2;
/// the boundary is the e^z fixture.
double ode_residual(KernelOrder nu, std::complex<double> z, double tol = kDefaultSeriesTol);

}  // namespace bsk
