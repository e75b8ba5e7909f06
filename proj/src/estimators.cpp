#include "qamc/estimators.hpp"

#include <cmath>
#include <string>

#include "qamc/compensated_sum.hpp"
#include "qamc/errors.hpp"
#include "qamc/generator.hpp"

namespace qamc {
namespace {

constexpr std::size_t kTwoStepMinimum = 6;

EstimateRecord make_record(EstimatorKind kind, Complex alpha, std::size_t n, Complex estimate,
                           bool unbiased) {
  EstimateRecord r;
  r.estimator = kind;
  r.alpha = alpha;
  r.n = n;
  r.estimate = estimate;
  r.degenerate_imaginary = !(estimate.imag() > 0.0);
  r.unbiased_regime = unbiased;
  return r;
}

Complex mobius_value(std::span<const double> samples, Complex alpha) {
  if (samples.empty()) throw DomainError("Mobius estimate of an empty sample");
  const double a = alpha.real();
  const double b = alpha.imag();
  // 1/(d + ib) = (d - ib) / (d^2 + b^2); the imaginary part is strictly
  // negative, so the sum never vanishes.
  CompensatedComplexSum sum;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double d = samples[j] + a;
    if (!std::isfinite(d)) throw DomainError("non-finite sample", j);
    const double scale = d * d + b * b;
    sum.add({d / scale, -b / scale});
  }
  return static_cast<double>(samples.size()) / sum.value() - alpha;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Geometric:
      return "geometric";
    case EstimatorKind::Mobius:
      return "mobius";
    case EstimatorKind::TwoStepMobius:
      return "two-step";
  }
  return "unknown";
}

EstimateRecord geometric_estimate(std::span<const double> samples, Complex alpha) {
  const Generator g = Generator::shifted_log(alpha);
  const Complex estimate = qam(g, samples);
  return make_record(EstimatorKind::Geometric, alpha, samples.size(), estimate,
                     samples.size() >= 2);
}

EstimateRecord mobius_estimate(std::span<const double> samples, Complex alpha) {
  if (!(alpha.imag() > 0.0) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("Mobius estimator requires finite alpha with Im(alpha) > 0");
  }
  return make_record(EstimatorKind::Mobius, alpha, samples.size(), mobius_value(samples, alpha),
                     samples.size() >= 3);
}

EstimateRecord two_step_mobius(std::span<const double> samples, Complex pilot_alpha) {
  if (samples.size() < kTwoStepMinimum) {
    throw DomainError("two-step estimator needs at least " + std::to_string(kTwoStepMinimum) +
                      " samples");
  }
  if (!(pilot_alpha.imag() > 0.0)) {
    throw DomainError("two-step estimator requires Im(pilot alpha) > 0");
  }
  const std::size_t half = samples.size() / 2;
  const Complex pilot = mobius_value(samples.first(half), pilot_alpha);
  const Complex adapted = pilot.imag() > 0.0 ? Complex(-pilot.real(), pilot.imag()) : pilot_alpha;
  const Complex second = mobius_value(samples.subspan(half), adapted);
  return make_record(EstimatorKind::TwoStepMobius, adapted, samples.size(), second, false);
}

void validate(const EstimatorSpec& spec) {
  switch (spec.kind) {
    case EstimatorKind::Geometric:
      Generator::shifted_log(spec.alpha);
      return;
    case EstimatorKind::Mobius:
    case EstimatorKind::TwoStepMobius:
      Generator::mobius_reciprocal(spec.alpha);
      return;
  }
}

EstimateRecord estimate(const EstimatorSpec& spec, std::span<const double> samples) {
  switch (spec.kind) {
    case EstimatorKind::Geometric:
      return geometric_estimate(samples, spec.alpha);
    case EstimatorKind::Mobius:
      return mobius_estimate(samples, spec.alpha);
    case EstimatorKind::TwoStepMobius:
      return two_step_mobius(samples, spec.alpha);
  }
  throw DomainError("unknown estimator kind");
}

bool sign_dichotomy(std::span<const double> samples, double alpha) {
  bool any_positive = false;
  bool any_negative = false;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double y = samples[j] + alpha;
    if (y == 0.0) throw DomainError("sample lies on the generator singularity", j);
    (y > 0.0 ? any_positive : any_negative) = true;
  }
  return !(any_positive && any_negative);
}

}  // namespace qamc
