#include "qamc/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include "qamc/errors.hpp"

namespace qamc {

CauchyParams::CauchyParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma)) {
    throw DomainError("Cauchy parameters must be finite");
  }
  if (!(sigma > 0.0)) throw DomainError("Cauchy scale must be positive");
}

double density(const CauchyParams& p, double x) {
  const double d = x - p.mu();
  return (p.sigma() / kPi) / (d * d + p.sigma() * p.sigma());
}

double cdf(const CauchyParams& p, double x) {
  return 0.5 + std::atan((x - p.mu()) / p.sigma()) / kPi;
}

std::vector<double> sample(const CauchyParams& p, std::uint64_t seed, std::size_t count) {
  Xoshiro256 rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = draw(p, rng);
  return out;
}

Complex expected_generator_value(const CauchyParams& p, const Generator& g) {
  switch (g.kind()) {
    case GeneratorKind::ShiftedLog:
      return branch_log(p.gamma() + g.alpha());
    case GeneratorKind::MobiusReciprocal:
      return 1.0 / (p.gamma() + g.alpha());
    case GeneratorKind::CayleyDisk:
      return (p.gamma() + std::conj(g.alpha())) / (p.gamma() + g.alpha());
  }
  throw DomainError("unknown generator kind");
}

QuadratureResult expected_squared_angle(const CauchyParams& p, Complex alpha, double tolerance) {
  const double height = alpha.imag();
  if (height < 0.0) throw DomainError("expected_squared_angle requires Im(alpha) >= 0");
  if (height == 0.0) {
    return {kPi * kPi * cdf(p, -alpha.real()), 0.0};
  }

  // Y = X + Re(alpha) ~ C(mu + Re(alpha), sigma); theta_Y = arg(Y + i Im(alpha)).
  const double center = p.mu() + alpha.real();
  const double sigma = p.sigma();
  auto integrand = [&](double y) {
    const double theta = std::atan2(height, y);
    const double d = y - center;
    return theta * theta * (sigma / kPi) / (d * d + sigma * sigma);
  };
  // The angle drops from pi to 0 over a width of about Im(alpha) around y = 0,
  // with tails of order Im(alpha) / |y|; geometric breakpoints out to the
  // density scale resolve every decade of that feature.
  std::vector<double> features{0.0, center};
  const double reach = std::max(sigma, std::abs(center));
  for (double y = height; y < reach; y *= 4.0) {
    features.push_back(y);
    features.push_back(-y);
  }
  return integrate_real_line(integrand, tolerance, center, sigma, features);
}

TheoreticalAsymptotics asymptotic_variance_geometric(const CauchyParams& p, Complex alpha,
                                                     double tolerance) {
  if (alpha.imag() < 0.0) {
    throw DomainError("geometric estimator requires Im(alpha) >= 0");
  }
  const Complex shifted = p.gamma() + alpha;
  const double theta_alpha = std::arg(shifted);
  const QuadratureResult angle2 = expected_squared_angle(p, alpha, tolerance);
  const double limit = 2.0 * std::norm(shifted) * (angle2.value - theta_alpha * theta_alpha);

  TheoreticalAsymptotics out;
  out.kind = GeneratorKind::ShiftedLog;
  out.alpha = alpha;
  out.n_var_limit = limit;
  out.theta_alpha = theta_alpha;
  out.clt_scalar = limit / 2.0;
  out.quadrature_error = 2.0 * std::norm(shifted) * angle2.error_estimate;
  return out;
}

TheoreticalAsymptotics asymptotic_variance_mobius(const CauchyParams& p, Complex alpha) {
  if (!(alpha.imag() > 0.0)) {
    throw DomainError("mobius estimator requires Im(alpha) > 0");
  }
  const Complex shifted = p.gamma() + alpha;
  const double limit = p.sigma() / alpha.imag() * std::norm(shifted);

  TheoreticalAsymptotics out;
  out.kind = GeneratorKind::MobiusReciprocal;
  out.alpha = alpha;
  out.n_var_limit = limit;
  out.theta_alpha = std::arg(shifted);
  out.clt_scalar = limit / 2.0;
  return out;
}

double cramer_rao_bound(const CauchyParams& p, std::size_t n) {
  if (n == 0) throw DomainError("Cramer-Rao bound needs n >= 1");
  return 4.0 * p.sigma() * p.sigma() / static_cast<double>(n);
}

double zolotarev_second_moment(const CauchyParams& p) {
  const double log_r = std::log(p.modulus());
  const double theta = p.angle();
  return log_r * log_r + theta * (kPi - theta);
}

}  // namespace qamc
