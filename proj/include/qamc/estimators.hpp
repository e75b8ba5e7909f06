#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "qamc/branch.hpp"

namespace qamc {

enum class EstimatorKind { Geometric, Mobius, TwoStepMobius };

std::string_view to_string(EstimatorKind kind);

/// Point estimate of gamma = mu + sigma i.
struct EstimateRecord {
  EstimatorKind estimator = EstimatorKind::Geometric;
  /// Shift actually used; for TwoStepMobius this is the adapted second-stage shift.
  Complex alpha;
  std::size_t n = 0;
  Complex estimate;
  /// Im(estimate) <= 0, i.e. no usable scale estimate.
  bool degenerate_imaginary = false;
  /// n is large enough for the unbiasedness theorem (n >= 2 geometric,
  /// n >= 3 Mobius). Never set for the two-step scheme.
  bool unbiased_regime = false;
};

/// Estimator identity plus its shift; pilot shift for TwoStepMobius.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Mobius;
  Complex alpha{0.0, 1.0};
};

/// Throws DomainError if `spec.alpha` is not admissible for `spec.kind`.
void validate(const EstimatorSpec& spec);

/// Dispatches to the estimator named by `spec`.
EstimateRecord estimate(const EstimatorSpec& spec, std::span<const double> samples);

/// prod (x_j + alpha)^{1/n} - alpha with the branch power, Im alpha >= 0.
/// Throws DomainError on an invalid shift or a sample equal to -alpha.
EstimateRecord geometric_estimate(std::span<const double> samples, Complex alpha);

/// n / sum 1/(x_j + alpha) - alpha, Im alpha > 0. Equal to
/// sum x_j/(x_j + alpha) / sum 1/(x_j + alpha).
EstimateRecord mobius_estimate(std::span<const double> samples, Complex alpha);

/// Pilot Mobius estimate on the first half with `pilot_alpha`, then a Mobius
/// estimate on the second half with alpha = -Re(pilot) + i Im(pilot), the
/// variance-minimising shift. Falls back to `pilot_alpha` if the pilot has no
/// positive imaginary part. Requires n >= 6 and Im pilot_alpha > 0.
EstimateRecord two_step_mobius(std::span<const double> samples, Complex pilot_alpha);

/// True iff every x_j + alpha has the same sign; for real alpha this holds
/// exactly when the geometric estimate is real. Throws DomainError for a
/// sample equal to -alpha.
bool sign_dichotomy(std::span<const double> samples, double alpha);

}  // namespace qamc
