#include "qamc/branch.hpp"

#include <cmath>
#include <limits>

#include "qamc/errors.hpp"

namespace qamc {
namespace {

void require_nonzero_finite(Complex z, const char* op) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(op) + ": non-finite argument");
  }
  if (z.real() == 0.0 && z.imag() == 0.0) {
    throw DomainError(std::string(op) + ": zero argument");
  }
}

Complex require_finite(Complex z, const char* op) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalError(std::string(op) + ": result is not finite");
  }
  return z;
}

}  // namespace

double branch_arg(Complex z) {
  require_nonzero_finite(z, "branch_arg");
  // -0.0 + 0.0 == +0.0, so signed zeros never select the far side of a cut.
  const double re = z.real() + 0.0;
  const double im = z.imag() + 0.0;
  double theta = std::atan2(im, re);
  if (theta < -kHalfPi) {
    theta += 2.0 * kPi;
    // The shift can round up onto the excluded endpoint.
    if (theta >= kThreeHalfPi) theta = std::nextafter(kThreeHalfPi, 0.0);
  }
  return theta;
}

Complex branch_log(Complex z) {
  const double theta = branch_arg(z);
  return {std::log(std::abs(z)), theta};
}

Complex branch_pow(Complex z, double p) {
  if (!std::isfinite(p)) throw DomainError("branch_pow: non-finite exponent");
  return require_finite(std::exp(p * branch_log(z)), "branch_pow");
}

}  // namespace qamc
