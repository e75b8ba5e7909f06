#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qamc/branch.hpp"
#include "qamc/generator.hpp"
#include "qamc/quadrature.hpp"
#include "qamc/rng.hpp"

namespace qamc {

/// Cauchy distribution C(mu, sigma), identified with gamma = mu + sigma i.
class CauchyParams {
 public:
  /// Throws DomainError unless sigma > 0 and both parameters are finite.
  CauchyParams(double mu, double sigma);

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  Complex gamma() const { return {mu_, sigma_}; }
  /// Polar form gamma = r exp(i theta).
  double modulus() const { return std::abs(gamma()); }
  /// theta in (0, pi).
  double angle() const { return std::arg(gamma()); }

  friend bool operator==(const CauchyParams&, const CauchyParams&) = default;

 private:
  double mu_;
  double sigma_;
};

double density(const CauchyParams& p, double x);

/// 1/2 + atan((x - mu) / sigma) / pi.
double cdf(const CauchyParams& p, double x);

/// One inverse-transform draw mu + sigma tan(pi (U - 1/2)).
inline double draw(const CauchyParams& p, Xoshiro256& rng) {
  return p.mu() + p.sigma() * std::tan(kPi * (rng.uniform_open() - 0.5));
}

/// `count` draws from a stream seeded by `seed`; deterministic in (p, seed, count).
std::vector<double> sample(const CauchyParams& p, std::uint64_t seed, std::size_t count);

/// E[f(X)] = f(mu + sigma i) for X ~ C(mu, sigma).
Complex expected_generator_value(const CauchyParams& p, const Generator& g);

/// Limits of the estimators built on one generator under C(mu, sigma).
struct TheoreticalAsymptotics {
  GeneratorKind kind = GeneratorKind::ShiftedLog;
  Complex alpha;
  /// lim n Var(estimator) = Var(f(X)) / |f'(gamma)|^2.
  double n_var_limit = 0.0;
  /// Argument of gamma + alpha, in (0, pi).
  double theta_alpha = 0.0;
  /// Per-axis variance of the isotropic limiting normal; half of n_var_limit.
  double clt_scalar = 0.0;
  /// Quadrature error estimate behind n_var_limit (0 for closed forms).
  double quadrature_error = 0.0;
};

/// E[theta_X^2] with theta_X the argument of X + alpha, X ~ C(mu, sigma).
/// Closed form pi^2 P(X < -Re alpha) when Im alpha = 0, quadrature otherwise.
QuadratureResult expected_squared_angle(const CauchyParams& p, Complex alpha,
                                        double tolerance = kDefaultQuadratureTolerance);

/// Geometric-mean limit 2 |gamma + alpha|^2 (E[theta_X^2] - theta_alpha^2).
/// Requires Im alpha >= 0. For alpha = 0 this is 2 r^2 theta (pi - theta).
TheoreticalAsymptotics asymptotic_variance_geometric(
    const CauchyParams& p, Complex alpha, double tolerance = kDefaultQuadratureTolerance);

/// Mobius limit (sigma / Im alpha) |gamma + alpha|^2; requires Im alpha > 0.
TheoreticalAsymptotics asymptotic_variance_mobius(const CauchyParams& p, Complex alpha);

/// Cramer-Rao floor 4 sigma^2 / n for unbiased estimators of gamma.
double cramer_rao_bound(const CauchyParams& p, std::size_t n);

/// E[(log|X|)^2] = (log r)^2 + theta (pi - theta).
double zolotarev_second_moment(const CauchyParams& p);

}  // namespace qamc
