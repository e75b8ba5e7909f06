#include "qamc/generator.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "qamc/compensated_sum.hpp"
#include "qamc/errors.hpp"

namespace qamc {
namespace {

void require_finite_alpha(Complex alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("generator shift must be finite");
  }
}

Complex checked(Complex z, const char* op) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalError(std::string(op) + ": result is not finite");
  }
  return z;
}

DomainError singular_sample(std::size_t index) {
  return DomainError("sample " + std::to_string(index) + " lies on the generator singularity",
                     index);
}

// Mean of log(x + alpha) for real alpha. Each term is log|x + alpha| plus
// i*pi for a negative shifted sample, so the imaginary mean is pi * l / n with
// l counted exactly; this keeps the all-equal-signs case exactly real.
Complex mean_log_real_shift(double alpha, std::span<const double> samples) {
  CompensatedSum log_modulus;
  std::size_t negatives = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double y = samples[j] + alpha;
    if (y == 0.0 || !std::isfinite(y)) throw singular_sample(j);
    log_modulus.add(std::log(std::abs(y)));
    if (y < 0.0) ++negatives;
  }
  const auto n = static_cast<double>(samples.size());
  const double angle = negatives == samples.size()
                           ? kPi
                           : kPi * static_cast<double>(negatives) / n;
  return {log_modulus.value() / n, angle};
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::ShiftedLog:
      return "shifted-log";
    case GeneratorKind::MobiusReciprocal:
      return "mobius-reciprocal";
    case GeneratorKind::CayleyDisk:
      return "cayley-disk";
  }
  return "unknown";
}

Generator Generator::shifted_log(Complex alpha) {
  require_finite_alpha(alpha);
  if (alpha.imag() < 0.0) {
    throw DomainError("shifted-log generator requires Im(alpha) >= 0");
  }
  return {GeneratorKind::ShiftedLog, alpha};
}

Generator Generator::mobius_reciprocal(Complex alpha) {
  require_finite_alpha(alpha);
  if (!(alpha.imag() > 0.0)) {
    throw DomainError("mobius-reciprocal generator requires Im(alpha) > 0");
  }
  return {GeneratorKind::MobiusReciprocal, alpha};
}

Generator Generator::cayley_disk(Complex alpha) {
  require_finite_alpha(alpha);
  if (!(alpha.imag() > 0.0)) {
    throw DomainError("cayley-disk generator requires Im(alpha) > 0");
  }
  return {GeneratorKind::CayleyDisk, alpha};
}

Generator Generator::make(GeneratorKind kind, Complex alpha) {
  switch (kind) {
    case GeneratorKind::ShiftedLog:
      return shifted_log(alpha);
    case GeneratorKind::MobiusReciprocal:
      return mobius_reciprocal(alpha);
    case GeneratorKind::CayleyDisk:
      return cayley_disk(alpha);
  }
  throw DomainError("unknown generator kind");
}

Complex apply_generator(const Generator& g, double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite sample");
  const Complex shifted = x + g.alpha();
  if (shifted == Complex(0.0, 0.0)) throw DomainError("sample lies on the generator singularity");
  switch (g.kind()) {
    case GeneratorKind::ShiftedLog:
      return branch_log(shifted);
    case GeneratorKind::MobiusReciprocal:
      return 1.0 / shifted;
    case GeneratorKind::CayleyDisk:
      return (x + std::conj(g.alpha())) / shifted;
  }
  throw DomainError("unknown generator kind");
}

Complex invert_generator(const Generator& g, Complex w) {
  const Complex alpha = g.alpha();
  switch (g.kind()) {
    case GeneratorKind::ShiftedLog:
      // exp(i pi) is the negative real axis; sin(pi) in floating point is not.
      if (w.imag() == kPi) return checked(Complex(-std::exp(w.real()), 0.0) - alpha, "invert");
      return checked(std::exp(w) - alpha, "invert");
    case GeneratorKind::MobiusReciprocal:
      if (w == Complex(0.0, 0.0)) throw DomainError("mobius-reciprocal inverse undefined at 0");
      return checked(1.0 / w - alpha, "invert");
    case GeneratorKind::CayleyDisk:
      if (w == Complex(1.0, 0.0)) throw DomainError("cayley-disk inverse undefined at 1");
      return checked((std::conj(alpha) - w * alpha) / (w - 1.0), "invert");
  }
  throw DomainError("unknown generator kind");
}

Complex generator_derivative(const Generator& g, Complex z) {
  const Complex shifted = z + g.alpha();
  if (shifted == Complex(0.0, 0.0)) throw DomainError("derivative evaluated at the pole");
  switch (g.kind()) {
    case GeneratorKind::ShiftedLog:
      return 1.0 / shifted;
    case GeneratorKind::MobiusReciprocal:
      return -1.0 / (shifted * shifted);
    case GeneratorKind::CayleyDisk:
      return (g.alpha() - std::conj(g.alpha())) / (shifted * shifted);
  }
  throw DomainError("unknown generator kind");
}

Complex qam(const Generator& g, std::span<const double> samples) {
  if (samples.empty()) throw DomainError("quasi-arithmetic mean of an empty sample");

  Complex mean;
  if (g.kind() == GeneratorKind::ShiftedLog && g.alpha().imag() == 0.0) {
    mean = mean_log_real_shift(g.alpha().real(), samples);
  } else {
    CompensatedComplexSum sum;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      try {
        sum.add(apply_generator(g, samples[j]));
      } catch (const DomainError&) {
        throw singular_sample(j);
      }
    }
    mean = sum.value() / static_cast<double>(samples.size());
  }

  const Complex result = invert_generator(g, mean);
  assert(result.imag() >= -1e-9 * (1.0 + std::abs(result) + std::abs(g.alpha())));
  return result;
}

}  // namespace qamc
