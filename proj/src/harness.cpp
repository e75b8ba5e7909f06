#include "qamc/harness.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <sstream>

#include "qamc/compensated_sum.hpp"
#include "qamc/errors.hpp"
#include "qamc/generator.hpp"
#include "qamc/kernels.hpp"
#include "qamc/ks.hpp"
#include "qamc/quadrature.hpp"

namespace qamc {
namespace {

constexpr std::uint64_t kHarmonicStreamTag = 0x4841524d;   // "HARM"
constexpr std::uint64_t kReferenceStreamTag = 0x52454643;  // "REFC"
constexpr double kTargetTolerance = 1e-10;

double pearson(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw NumericalError("correlation of a constant sequence");
  return sxy / std::sqrt(sxx * syy);
}

double uniform_mean(const UniformSource& u, const std::function<double(double)>& g,
                    std::span<const double> breakpoints) {
  const double width = u.hi - u.lo;
  return integrate_interval(g, u.lo, u.hi, kTargetTolerance * width, breakpoints).value / width;
}

// exp(2 E log|X + alpha|) Var(log(X + alpha)) for X ~ U(lo, hi).
Targets uniform_geometric_targets(const UniformSource& u, Complex alpha) {
  const double a = alpha.real();
  const double b = alpha.imag();
  const double kink[] = {-a};
  auto log_modulus = [=](double x) { return 0.5 * std::log((x + a) * (x + a) + b * b); };
  auto angle = [=](double x) { return std::atan2(b, x + a); };

  const double el = uniform_mean(u, log_modulus, kink);
  const double el2 = uniform_mean(u, [&](double x) { const double l = log_modulus(x); return l * l; }, kink);
  const double ea = uniform_mean(u, angle, kink);
  const double ea2 = uniform_mean(u, [&](double x) { const double t = angle(x); return t * t; }, kink);

  const double variance = (el2 - el * el) + (ea2 - ea * ea);
  Targets t;
  t.mean = invert_generator(Generator::shifted_log(alpha), Complex(el, ea));
  t.n_var = std::exp(2.0 * el) * variance;
  t.clt_scalar = t.n_var / 2.0;
  return t;
}

// Var(1/(X + alpha)) / |E[1/(X + alpha)]|^4 for X ~ U(lo, hi).
Targets uniform_mobius_targets(const UniformSource& u, Complex alpha) {
  const double a = alpha.real();
  const double b = alpha.imag();
  const double peak[] = {-a};
  auto inv_norm = [=](double x) { return 1.0 / ((x + a) * (x + a) + b * b); };

  const double re = uniform_mean(u, [&](double x) { return (x + a) * inv_norm(x); }, peak);
  const double im = uniform_mean(u, [&](double x) { return -b * inv_norm(x); }, peak);
  const double second = uniform_mean(u, inv_norm, peak);

  const Complex m(re, im);
  const double variance = second - std::norm(m);
  Targets t;
  t.mean = invert_generator(Generator::mobius_reciprocal(alpha), m);
  t.n_var = variance / (std::norm(m) * std::norm(m));
  t.clt_scalar = t.n_var / 2.0;
  return t;
}

std::string describe_estimator(const EstimatorSpec& e) {
  std::ostringstream out;
  out << to_string(e.kind) << " alpha=(" << e.alpha.real() << "," << e.alpha.imag() << ")";
  return out.str();
}

}  // namespace

void validate(const SampleSource& source) {
  if (const auto* u = std::get_if<UniformSource>(&source)) {
    if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || !(u->lo < u->hi)) {
      throw ConfigError("uniform source requires finite lo < hi");
    }
  }
}

std::string describe(const SampleSource& source) {
  std::ostringstream out;
  if (const auto* c = std::get_if<CauchyParams>(&source)) {
    out << "cauchy(mu=" << c->mu() << ", sigma=" << c->sigma() << ")";
  } else {
    const auto& u = std::get<UniformSource>(source);
    out << "uniform(lo=" << u.lo << ", hi=" << u.hi << ")";
  }
  return out.str();
}

void ExperimentConfig::validate() const {
  qamc::validate(source);
  try {
    qamc::validate(estimator);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (replications < kMinReplications) {
    throw ConfigError("replications must be at least " + std::to_string(kMinReplications));
  }
  if (n_values.empty()) throw ConfigError("at least one sample size is required");
  for (std::size_t n : n_values) {
    if (n == 0) throw ConfigError("sample sizes must be positive");
    if (estimator.kind == EstimatorKind::TwoStepMobius && n < 6) {
      throw ConfigError("two-step estimator needs n >= 6");
    }
  }
  if (estimator.kind == EstimatorKind::TwoStepMobius &&
      !std::holds_alternative<CauchyParams>(source)) {
    throw ConfigError("two-step estimator is only supported for Cauchy sources");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!(n_var_tolerance > 0.0)) throw ConfigError("n Var tolerance must be positive");
  if (!(mean_standard_errors > 0.0)) throw ConfigError("mean standard-error multiple must be positive");
}

bool ExperimentReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const SizeResult& r) { return r.verdicts.passed(); });
}

Targets theoretical_targets(const SampleSource& source, const EstimatorSpec& estimator,
                            std::size_t n) {
  if (const auto* u = std::get_if<UniformSource>(&source)) {
    switch (estimator.kind) {
      case EstimatorKind::Geometric:
        return uniform_geometric_targets(*u, estimator.alpha);
      case EstimatorKind::Mobius:
        return uniform_mobius_targets(*u, estimator.alpha);
      case EstimatorKind::TwoStepMobius:
        break;
    }
    throw ConfigError("two-step estimator is only supported for Cauchy sources");
  }

  const auto& params = std::get<CauchyParams>(source);
  Targets t;
  t.mean = params.gamma();
  t.isotropic = true;
  switch (estimator.kind) {
    case EstimatorKind::Geometric: {
      const auto limits = asymptotic_variance_geometric(params, estimator.alpha);
      t.n_var = limits.n_var_limit;
      t.unbiased = n >= 2;
      break;
    }
    case EstimatorKind::Mobius: {
      const auto limits = asymptotic_variance_mobius(params, estimator.alpha);
      t.n_var = limits.n_var_limit;
      t.unbiased = n >= 3;
      break;
    }
    case EstimatorKind::TwoStepMobius: {
      // The second stage sees n - n/2 samples at a near-optimal shift.
      const double second_stage = static_cast<double>(n - n / 2);
      t.n_var = cramer_rao_bound(params, 1) * static_cast<double>(n) / second_stage;
      t.unbiased = false;
      break;
    }
  }
  t.clt_scalar = t.n_var / 2.0;
  return t;
}

double normal_qq_correlation(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const boost::math::normal_distribution<double> normal;
  const double m = static_cast<double>(values.size());
  std::vector<double> scores(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    scores[i] = boost::math::quantile(normal, (static_cast<double>(i) + 1.0 - 0.375) / (m + 0.25));
  }
  return pearson(values, scores);
}

CltDiagnostics clt_diagnostics(std::span<const Complex> deviations, double theoretical_scalar) {
  if (deviations.size() < kMinCltDeviations) {
    throw DomainError("CLT diagnostics need at least " + std::to_string(kMinCltDeviations) +
                      " deviations");
  }
  if (!(theoretical_scalar > 0.0)) throw DomainError("theoretical CLT scalar must be positive");

  Moments2 moments;
  std::vector<double> re(deviations.size());
  std::vector<double> im(deviations.size());
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    moments.add(deviations[i]);
    re[i] = deviations[i].real();
    im[i] = deviations[i].imag();
  }
  const Covariance2 cov = moments.covariance();
  if (!(cov.re_re > 0.0) || !(cov.im_im > 0.0)) {
    throw NumericalError("CLT diagnostics on a zero-variance axis");
  }

  CltDiagnostics d;
  d.offdiag_correlation = cov.re_im / std::sqrt(cov.re_re * cov.im_im);
  d.re_variance_ratio = cov.re_re / theoretical_scalar;
  d.im_variance_ratio = cov.im_im / theoretical_scalar;
  d.re_qq_correlation = normal_qq_correlation(std::move(re));
  d.im_qq_correlation = normal_qq_correlation(std::move(im));
  return d;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  const double replications = static_cast<double>(cfg.replications);

  for (std::size_t n : cfg.n_values) {
    SizeResult r;
    r.n = n;

    const kernels::ReplicationBatch batch{cfg.source, cfg.estimator, n, cfg.replications, cfg.seed};
    const kernels::BatchResult out = kernels::replicate(batch, cfg.workers);
    r.resampled = out.resampled;
    if (out.exhausted > 0 ||
        static_cast<double>(out.resampled) > kMaxFailureFraction * replications) {
      std::ostringstream msg;
      msg << "experiment aborted: " << out.resampled << " of " << cfg.replications
          << " replications failed for " << describe_estimator(cfg.estimator) << " at n=" << n;
      throw NumericalError(msg.str());
    }
    r.target = theoretical_targets(cfg.source, cfg.estimator, n);

    Moments2 moments;
    for (Complex z : out.estimates) moments.add(z);
    r.mean = moments.mean();
    r.covariance = moments.covariance();
    const double dn = static_cast<double>(n);
    r.n_var = dn * r.covariance.trace();
    r.mean_standard_error = {std::sqrt(r.covariance.re_re / replications),
                             std::sqrt(r.covariance.im_im / replications)};

    // Standard error of n Var from the spread of the squared deviations.
    Moments2 spread;
    for (Complex z : out.estimates) spread.add({std::norm(z - r.mean), 0.0});
    r.n_var_standard_error = dn * std::sqrt(spread.covariance().re_re / replications);

    if (r.target.isotropic && cfg.replications >= kMinCltDeviations &&
        r.target.clt_scalar > 0.0) {
      std::vector<Complex> deviations(out.estimates.size());
      const double root_n = std::sqrt(dn);
      for (std::size_t i = 0; i < deviations.size(); ++i) {
        deviations[i] = root_n * (out.estimates[i] - r.target.mean);
      }
      r.clt = clt_diagnostics(deviations, r.target.clt_scalar);
    }

    r.verdicts.n_var = std::abs(r.n_var - r.target.n_var) <= cfg.n_var_tolerance * r.target.n_var;
    if (r.target.unbiased) {
      const Complex miss = r.mean - r.target.mean;
      r.verdicts.mean =
          std::abs(miss.real()) <= cfg.mean_standard_errors * r.mean_standard_error.real() &&
          std::abs(miss.imag()) <= cfg.mean_standard_errors * r.mean_standard_error.imag();
    }
    if (cfg.check_clt && r.target.isotropic && r.clt) {
      const auto& c = *r.clt;
      const double tol = cfg.clt.variance_ratio_tolerance;
      r.verdicts.clt = std::abs(c.offdiag_correlation) < cfg.clt.max_abs_correlation &&
                       std::abs(c.re_variance_ratio - 1.0) <= tol &&
                       std::abs(c.im_variance_ratio - 1.0) <= tol &&
                       c.re_qq_correlation > cfg.clt.min_qq_correlation &&
                       c.im_qq_correlation > cfg.clt.min_qq_correlation;
    }
    report.results.push_back(r);
  }
  return report;
}

HarmonicCheckReport harmonic_identity_check(std::uint64_t seed, std::size_t n,
                                            std::size_t replications, double reference_sigma) {
  if (n == 0) throw ConfigError("harmonic check needs n >= 1");
  if (replications < kMinReplications) {
    throw ConfigError("replications must be at least " + std::to_string(kMinReplications));
  }
  const CauchyParams standard(0.0, 1.0);
  const CauchyParams reference(0.0, reference_sigma);

  HarmonicCheckReport report;
  report.seed = seed;
  report.n = n;
  report.replications = replications;
  report.reference_sigma = reference_sigma;

  std::vector<double> harmonic(replications);
  std::vector<double> direct(replications);
  for (std::size_t r = 0; r < replications; ++r) {
    bool resampled = false;
    for (std::uint64_t attempt = 0;; ++attempt) {
      Xoshiro256 rng(stream_key({seed, kHarmonicStreamTag, n, r, attempt}));
      CompensatedSum reciprocal;
      bool zero = false;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = draw(standard, rng);
        if (x == 0.0) zero = true;
        reciprocal.add(1.0 / x);
      }
      if (!zero && reciprocal.value() != 0.0) {
        harmonic[r] = static_cast<double>(n) / reciprocal.value();
        break;
      }
      resampled = true;
    }
    if (resampled) ++report.resampled;

    Xoshiro256 ref_rng(stream_key({seed, kReferenceStreamTag, r}));
    direct[r] = draw(reference, ref_rng);
  }

  report.ks_statistic = ks_two_sample_statistic(harmonic, direct);
  report.critical_value = ks_critical_value(replications, replications, 0.01);
  report.p_value = ks_p_value(report.ks_statistic, replications, replications);
  report.below_critical = report.ks_statistic < report.critical_value;
  return report;
}

AlphaScanResult scan_mobius_alphas(const CauchyParams& params, std::span<const Complex> alphas,
                                   std::size_t n, std::size_t replications, std::uint64_t seed,
                                   int workers) {
  if (alphas.empty()) throw ConfigError("alpha grid is empty");
  if (n == 0) throw ConfigError("sample size must be positive");
  if (replications < kMinReplications) {
    throw ConfigError("replications must be at least " + std::to_string(kMinReplications));
  }

  AlphaScanResult out;
  out.alphas.assign(alphas.begin(), alphas.end());
  const auto moments = kernels::mobius_alpha_moments(params, alphas, n, replications, seed, workers);

  const Complex optimum(-params.mu(), params.sigma());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    out.n_var_mc.push_back(static_cast<double>(n) * moments[k].covariance().trace());
    out.n_var_theory.push_back(asymptotic_variance_mobius(params, alphas[k]).n_var_limit);
    if (std::abs(alphas[k] - optimum) < std::abs(alphas[out.nearest_optimum] - optimum)) {
      out.nearest_optimum = k;
    }
  }
  out.argmin_mc = static_cast<std::size_t>(
      std::min_element(out.n_var_mc.begin(), out.n_var_mc.end()) - out.n_var_mc.begin());
  out.argmin_theory = static_cast<std::size_t>(
      std::min_element(out.n_var_theory.begin(), out.n_var_theory.end()) -
      out.n_var_theory.begin());
  return out;
}

}  // namespace qamc
