#pragma once

#include <functional>
#include <span>

namespace qamc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// Integral of `integrand` over the whole real line.
///
/// The line is mapped onto (-pi/2, pi/2) by x = center + scale * tan(t); for a
/// Cauchy-type integrand choose center = mu and scale = sigma so the mass is
/// spread evenly in t. The pieces between consecutive `breakpoints` (given in
/// x) are integrated with a 15-point Gauss-Kronrod rule, bisecting the panel
/// with the largest error estimate until the summed estimate is at most
/// `tolerance`.
///
/// Throws NumericalError carrying the best value and error estimate when the
/// refinement budget runs out first, and DomainError for a non-positive
/// tolerance or scale.
QuadratureResult integrate_real_line(const std::function<double(double)>& integrand,
                                     double tolerance = kDefaultQuadratureTolerance,
                                     double center = 0.0, double scale = 1.0,
                                     std::span<const double> breakpoints = {});

/// Same refinement on a finite interval [lower, upper].
QuadratureResult integrate_interval(const std::function<double(double)>& integrand,
                                    double lower, double upper,
                                    double tolerance = kDefaultQuadratureTolerance,
                                    std::span<const double> breakpoints = {});

}  // namespace qamc
