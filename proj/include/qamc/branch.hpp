#pragma once

#include <complex>
#include <numbers>

namespace qamc {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kThreeHalfPi = 3.0 * std::numbers::pi / 2.0;

// Logarithm branch used throughout the library: z = r exp(i theta) with
// theta in [-pi/2, 3pi/2). The cut is the non-positive imaginary axis; points
// on it get theta = -pi/2. Negative reals therefore map to log|x| + i pi and
// the closed upper half plane maps to arguments in [0, pi].
//
// All functions throw DomainError for a zero or non-finite argument and
// NumericalError if the result would not be finite.

/// Argument of z in [-pi/2, 3pi/2).
double branch_arg(Complex z);

/// log|z| + i branch_arg(z).
Complex branch_log(Complex z);

/// z^p = exp(p log z) on the branch above. For x < 0 this is (-x)^p exp(i pi p).
Complex branch_pow(Complex z, double p);

}  // namespace qamc
