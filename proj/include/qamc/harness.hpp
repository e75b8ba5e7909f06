#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qamc/estimators.hpp"
#include "qamc/moments.hpp"
#include "qamc/sources.hpp"

namespace qamc {

inline constexpr std::size_t kMinReplications = 100;
inline constexpr std::size_t kMinCltDeviations = 1000;
/// An experiment aborts when more than this fraction of replications needed
/// a resample.
inline constexpr double kMaxFailureFraction = 1e-4;

struct CltThresholds {
  double max_abs_correlation = 0.03;
  double variance_ratio_tolerance = 0.10;
  double min_qq_correlation = 0.99;
};

struct ExperimentConfig {
  SampleSource source = CauchyParams(0.0, 1.0);
  EstimatorSpec estimator;
  std::vector<std::size_t> n_values;
  std::size_t replications = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  /// Relative tolerance for |n Var - target| / target.
  double n_var_tolerance = 0.10;
  /// Mean verdict: each axis within this many standard errors of the target.
  double mean_standard_errors = 4.0;
  /// Add an isotropy verdict (Cauchy sources only).
  bool check_clt = false;
  CltThresholds clt;

  /// Throws ConfigError on any invalid field.
  void validate() const;
};

struct CltDiagnostics {
  double offdiag_correlation = 0.0;
  double re_variance_ratio = 0.0;
  double im_variance_ratio = 0.0;
  double re_qq_correlation = 0.0;
  double im_qq_correlation = 0.0;
};

struct Verdicts {
  std::optional<bool> n_var;
  std::optional<bool> mean;
  std::optional<bool> clt;

  bool passed() const { return n_var.value_or(true) && mean.value_or(true) && clt.value_or(true); }
};

/// Limits the harness compares against.
struct Targets {
  Complex mean;
  double n_var = 0.0;
  double clt_scalar = 0.0;
  /// Finite-n unbiasedness is a theorem for this source/estimator/n.
  bool unbiased = false;
  /// The limiting normal is isotropic (Cauchy sources).
  bool isotropic = false;
};

struct SizeResult {
  std::size_t n = 0;
  Complex mean;
  /// Per-axis standard error of the mean.
  Complex mean_standard_error;
  Covariance2 covariance;
  /// n * trace(covariance).
  double n_var = 0.0;
  double n_var_standard_error = 0.0;
  Targets target;
  /// Present for Cauchy sources with at least kMinCltDeviations replications.
  std::optional<CltDiagnostics> clt;
  std::size_t resampled = 0;
  Verdicts verdicts;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SizeResult> results;

  bool passed() const;
};

/// Theoretical mean and n Var limit for `estimator` under `source`. Cauchy
/// sources use the closed forms; Uniform sources evaluate
/// Var(f(X)) / |f'(f^{-1}(E f(X)))|^2 by quadrature. Throws ConfigError for
/// the two-step estimator with a non-Cauchy source.
Targets theoretical_targets(const SampleSource& source, const EstimatorSpec& estimator,
                            std::size_t n);

/// Runs M replications per sample size and compares against the targets.
/// Throws ConfigError on an invalid config and NumericalError when more than
/// kMaxFailureFraction of replications fail.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Isotropy diagnostics of deviations sqrt(n)(estimate - target) against the
/// per-axis variance `theoretical_scalar`. Needs at least kMinCltDeviations
/// values (DomainError); throws NumericalError for a zero-variance axis.
CltDiagnostics clt_diagnostics(std::span<const Complex> deviations, double theoretical_scalar);

/// Pearson correlation between sorted values and Blom normal scores.
double normal_qq_correlation(std::vector<double> values);

struct HarmonicCheckReport {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t replications = 0;
  /// Scale of the Cauchy(0, s) reference sample; 1 for the identity check.
  double reference_sigma = 1.0;
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 0.0;
  bool below_critical = false;
  std::size_t resampled = 0;
};

/// KS comparison of M harmonic means n / sum(1/X_j) of standard Cauchy samples
/// against M direct Cauchy(0, reference_sigma) draws at the 1% level.
HarmonicCheckReport harmonic_identity_check(std::uint64_t seed, std::size_t n,
                                            std::size_t replications,
                                            double reference_sigma = 1.0);

struct AlphaScanResult {
  std::vector<Complex> alphas;
  std::vector<double> n_var_mc;
  std::vector<double> n_var_theory;
  std::size_t argmin_mc = 0;
  std::size_t argmin_theory = 0;
  /// Grid point closest to the optimal shift -mu + sigma i.
  std::size_t nearest_optimum = 0;
};

/// n Var of the Mobius estimator over a grid of shifts, with every shift
/// evaluated on the same sample sets.
AlphaScanResult scan_mobius_alphas(const CauchyParams& params, std::span<const Complex> alphas,
                                   std::size_t n, std::size_t replications, std::uint64_t seed,
                                   int workers);

}  // namespace qamc
