#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "qamc/branch.hpp"

namespace qamc {

enum class GeneratorKind {
  ShiftedLog,        ///< f(x) = log(x + alpha), Im alpha >= 0
  MobiusReciprocal,  ///< f(x) = 1 / (x + alpha), Im alpha > 0
  CayleyDisk,        ///< f(x) = (x + conj(alpha)) / (x + alpha), Im alpha > 0
};

std::string_view to_string(GeneratorKind kind);

/// An admissible quasi-arithmetic mean generator together with its shift.
///
/// The factory functions reject shifts for which the image of the closed
/// upper half plane is not convex: ShiftedLog needs Im alpha >= 0, the two
/// Mobius forms need Im alpha > 0 (the real-shift harmonic mean has a
/// non-convex image and is not supported).
class Generator {
 public:
  static Generator shifted_log(Complex alpha);
  static Generator mobius_reciprocal(Complex alpha);
  static Generator cayley_disk(Complex alpha);
  static Generator make(GeneratorKind kind, Complex alpha);

  GeneratorKind kind() const { return kind_; }
  Complex alpha() const { return alpha_; }

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Generator(GeneratorKind kind, Complex alpha) : kind_(kind), alpha_(alpha) {}

  GeneratorKind kind_;
  Complex alpha_;
};

/// f(x). Throws DomainError when x + alpha = 0.
Complex apply_generator(const Generator& g, double x);

/// f^{-1}(w). Throws DomainError for w = 0 (MobiusReciprocal) or w = 1
/// (CayleyDisk); other out-of-image inputs are not rejected.
Complex invert_generator(const Generator& g, Complex w);

/// f'(z). Throws DomainError at the pole z = -alpha.
Complex generator_derivative(const Generator& g, Complex z);

/// f^{-1}((1/n) sum f(x_j)) over real samples, with a compensated sum of the
/// forward values. Throws DomainError for an empty input or a sample on the
/// singularity (the error carries the sample index).
Complex qam(const Generator& g, std::span<const double> samples);

}  // namespace qamc
