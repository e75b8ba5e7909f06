#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qamc/cauchy.hpp"
#include "qamc/errors.hpp"
#include "qamc/estimators.hpp"
#include "qamc/generator.hpp"

namespace qamc {
namespace {

const Complex kI{0.0, 1.0};

Complex ratio_form(const std::vector<double>& x, Complex alpha) {
  Complex num;
  Complex den;
  for (double v : x) {
    num += v / (v + alpha);
    den += 1.0 / (v + alpha);
  }
  return num / den;
}

struct AxisStats {
  double mean_re = 0.0, mean_im = 0.0, se_re = 0.0, se_im = 0.0;
};

AxisStats axis_stats(const std::vector<Complex>& z) {
  const double n = static_cast<double>(z.size());
  AxisStats s;
  for (Complex v : z) {
    s.mean_re += v.real();
    s.mean_im += v.imag();
  }
  s.mean_re /= n;
  s.mean_im /= n;
  double vr = 0.0;
  double vi = 0.0;
  for (Complex v : z) {
    vr += (v.real() - s.mean_re) * (v.real() - s.mean_re);
    vi += (v.imag() - s.mean_im) * (v.imag() - s.mean_im);
  }
  s.se_re = std::sqrt(vr / (n - 1.0) / n);
  s.se_im = std::sqrt(vi / (n - 1.0) / n);
  return s;
}

TEST(GeometricEstimate, Examples) {
  const std::vector<double> pm{1.0, -1.0};
  const auto r = geometric_estimate(pm, 0.0);
  EXPECT_NEAR(r.estimate.real(), 0.0, 1e-15);
  EXPECT_NEAR(r.estimate.imag(), 1.0, 1e-15);
  EXPECT_EQ(r.n, 2u);
  EXPECT_TRUE(r.unbiased_regime);
  EXPECT_FALSE(r.degenerate_imaginary);
  EXPECT_EQ(r.estimator, EstimatorKind::Geometric);

  const std::vector<double> positive{0.5, 2.0, 3.0, 11.0};
  const auto pos = geometric_estimate(positive, 0.0);
  EXPECT_EQ(pos.estimate.imag(), 0.0);
  EXPECT_TRUE(pos.degenerate_imaginary);

  const std::vector<double> constant(5, -1.25);
  EXPECT_NEAR(std::abs(geometric_estimate(constant, kI).estimate - (-1.25)), 0.0, 1e-14);
}

TEST(GeometricEstimate, SingleSampleIsNotInUnbiasedRegime) {
  const std::vector<double> one{3.0};
  EXPECT_FALSE(geometric_estimate(one, kI).unbiased_regime);
}

TEST(GeometricEstimate, DomainErrors) {
  const std::vector<double> x{1.0, -2.0};
  EXPECT_THROW(geometric_estimate(x, 2.0), DomainError);
  EXPECT_THROW(geometric_estimate(x, {0.0, -1.0}), DomainError);
}

TEST(MobiusEstimate, Examples) {
  const std::vector<double> b10{10.0, -10.0};
  EXPECT_NEAR(std::abs(mobius_estimate(b10, kI).estimate - 100.0 * kI), 0.0, 1e-12);
  const std::vector<double> constant(4, 3.5);
  EXPECT_NEAR(std::abs(mobius_estimate(constant, kI).estimate - 3.5), 0.0, 1e-14);
  const std::vector<double> zero{0.0};
  EXPECT_NEAR(std::abs(mobius_estimate(zero, kI).estimate), 0.0, 1e-15);
}

TEST(MobiusEstimate, UnbiasedRegimeFlag) {
  const std::vector<double> two{1.0, 2.0};
  const std::vector<double> three{1.0, 2.0, 3.0};
  EXPECT_FALSE(mobius_estimate(two, kI).unbiased_regime);
  EXPECT_TRUE(mobius_estimate(three, kI).unbiased_regime);
}

TEST(MobiusEstimate, RejectsRealShift) {
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_THROW(mobius_estimate(x, 0.0), DomainError);
  EXPECT_THROW(mobius_estimate(x, {1.0, -1.0}), DomainError);
  EXPECT_THROW(mobius_estimate(std::vector<double>{}, kI), DomainError);
}

TEST(MobiusEstimate, EqualsRatioForm) {
  std::mt19937_64 rng(17);
  std::cauchy_distribution<double> cauchy(1.0, 2.0);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> x(3 + i % 40);
    for (auto& v : x) v = cauchy(rng);
    const Complex alpha(u(rng), std::exp(u(rng) / 2.0));
    const Complex a = mobius_estimate(x, alpha).estimate;
    const Complex b = ratio_form(x, alpha);
    ASSERT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b))) << alpha;
  }
}

TEST(MobiusEstimate, AgreesWithBothGeneratorForms) {
  std::mt19937_64 rng(19);
  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x(2 + i % 20);
    for (auto& v : x) v = cauchy(rng);
    const Complex alpha(0.3 * (i % 7) - 1.0, 0.25 + 0.1 * (i % 5));
    const Complex m = mobius_estimate(x, alpha).estimate;
    EXPECT_LT(std::abs(m - qam(Generator::mobius_reciprocal(alpha), x)), 1e-10 * std::abs(m));
    EXPECT_LT(std::abs(m - qam(Generator::cayley_disk(alpha), x)), 1e-10 * std::abs(m));
  }
}

TEST(Estimators, ScaleEstimatePositiveForUpperHalfPlaneShift) {
  std::mt19937_64 rng(23);
  std::cauchy_distribution<double> cauchy(-1.0, 0.5);
  for (int i = 0; i < 5000; ++i) {
    std::vector<double> x(2 + i % 9);
    for (auto& v : x) v = cauchy(rng);
    ASSERT_GT(geometric_estimate(x, {0.5, 1.0}).estimate.imag(), 0.0);
    ASSERT_GT(mobius_estimate(x, {0.5, 1.0}).estimate.imag(), 0.0);
  }
}

TEST(GeometricEstimate, TranslationEquivariance) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(2 + i % 15);
    for (auto& v : x) v = normal(rng);
    const double c = 0.5 * (i % 9) - 2.0;
    std::vector<double> shifted(x);
    for (auto& v : shifted) v += c;
    const Complex alpha(0.25, 1.0 + 0.1 * (i % 4));
    const Complex lhs = geometric_estimate(shifted, alpha).estimate;
    const Complex rhs = geometric_estimate(x, alpha + c).estimate + c;
    ASSERT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(SignDichotomy, Examples) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{1.0, -2.0, 3.0};
  EXPECT_TRUE(sign_dichotomy(a, 0.0));
  EXPECT_FALSE(sign_dichotomy(b, 0.0));
  EXPECT_THROW(sign_dichotomy(b, 2.0), DomainError);
}

TEST(SignDichotomy, AllNegativeGivesNegativeReal) {
  const std::vector<double> x{-1.0, -2.0};
  EXPECT_TRUE(sign_dichotomy(x, 0.0));
  const Complex g = geometric_estimate(x, 0.0).estimate;
  EXPECT_EQ(g.imag(), 0.0);
  EXPECT_DOUBLE_EQ(g.real(), -std::sqrt(2.0));
}

TEST(SignDichotomy, MatchesExactlyRealEstimate) {
  std::mt19937_64 rng(31);
  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 6);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  for (int i = 0; i < 20000; ++i) {
    std::vector<double> x(static_cast<std::size_t>(size(rng)));
    for (auto& v : x) v = cauchy(rng);
    const double alpha = i % 2 == 0 ? 0.0 : shift(rng);
    const bool same = sign_dichotomy(x, alpha);
    const auto r = geometric_estimate(x, alpha);
    ASSERT_EQ(same, r.estimate.imag() == 0.0);
    ASSERT_EQ(same, r.degenerate_imaginary);
  }
}

TEST(SignDichotomy, PairDegeneracyFrequencyIsOneHalf) {
  const auto x = sample(CauchyParams(0.0, 1.0), 37, 2 * 40000);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < 40000; ++k) {
    const std::vector<double> pair{x[2 * k], x[2 * k + 1]};
    if (geometric_estimate(pair, 0.0).estimate.imag() == 0.0) ++hits;
  }
  const double freq = static_cast<double>(hits) / 40000.0;
  EXPECT_NEAR(freq, 0.5, 3.0 * std::sqrt(0.25 / 40000.0));
}

class Unbiasedness : public ::testing::TestWithParam<std::tuple<EstimatorKind, double, double, Complex>> {};

TEST_P(Unbiasedness, MeanWithinFourStandardErrors) {
  const auto [kind, mu, sigma, alpha] = GetParam();
  const CauchyParams p(mu, sigma);
  const std::size_t n = kind == EstimatorKind::Geometric ? 2 : 3;
  const std::size_t reps = 30000;
  const auto x = sample(p, 41, n * reps);
  std::vector<Complex> est(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    est[r] = estimate({kind, alpha}, std::span(x).subspan(r * n, n)).estimate;
  }
  const auto s = axis_stats(est);
  EXPECT_NEAR(s.mean_re, mu, 4.0 * s.se_re);
  EXPECT_NEAR(s.mean_im, sigma, 4.0 * s.se_im);
}

INSTANTIATE_TEST_SUITE_P(
    MinimalSampleSizes, Unbiasedness,
    ::testing::Values(std::make_tuple(EstimatorKind::Geometric, 0.0, 1.0, Complex(0.0, 1.0)),
                      std::make_tuple(EstimatorKind::Geometric, 2.0, 3.0, Complex(1.0, 2.0)),
                      std::make_tuple(EstimatorKind::Geometric, 0.0, 1.0, Complex(0.0, 0.0)),
                      std::make_tuple(EstimatorKind::Mobius, 0.0, 1.0, Complex(0.0, 1.0)),
                      std::make_tuple(EstimatorKind::Mobius, 2.0, 3.0, Complex(1.0, 2.0))));

TEST(Estimators, StrongConsistencyAlongOneTrajectory) {
  const CauchyParams p(1.0, 2.0);
  const auto x = sample(p, 43, 100000);
  for (EstimatorKind kind : {EstimatorKind::Geometric, EstimatorKind::Mobius}) {
    std::vector<double> errors;
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
      const auto r = estimate({kind, kI}, std::span(x).first(n));
      errors.push_back(std::abs(r.estimate - p.gamma()));
    }
    EXPECT_LT(errors[2], 0.1) << to_string(kind);
    EXPECT_LT(errors[3], 0.1) << to_string(kind);
    EXPECT_LT(errors[3], errors[2]) << to_string(kind);
  }
}

// For standard Cauchy and alpha = 0, E|G_n|^2 = (E|X|^(2/n))^n = cos(pi/n)^(-n).
TEST(GeometricEstimate, SecondMomentOfModulus) {
  for (std::size_t n : {4u, 8u, 32u}) {
    const std::size_t reps = 40000;
    const auto x = sample(CauchyParams(0.0, 1.0), 47 + n, n * reps);
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double m = std::norm(geometric_estimate(std::span(x).subspan(r * n, n), 0.0).estimate);
      s += m;
      s2 += m * m;
    }
    const double mean = s / reps;
    const double se = std::sqrt((s2 / reps - mean * mean) / reps);
    const double exact = std::pow(std::cos(kPi / static_cast<double>(n)), -static_cast<double>(n));
    EXPECT_NEAR(mean, exact, 4.0 * se) << "n=" << n;
  }
}

TEST(TwoStep, ConstantSamples) {
  const std::vector<double> x(6, 2.5);
  const auto r = two_step_mobius(x, kI);
  EXPECT_NEAR(std::abs(r.estimate - 2.5), 0.0, 1e-14);
  EXPECT_EQ(r.alpha, kI);
  EXPECT_FALSE(r.unbiased_regime);
}

TEST(TwoStep, Validation) {
  const std::vector<double> five(5, 1.0);
  EXPECT_THROW(two_step_mobius(five, kI), DomainError);
  const std::vector<double> six{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  EXPECT_THROW(two_step_mobius(six, 1.0), DomainError);
}

TEST(TwoStep, AdaptedShiftReflectsPilot) {
  const std::vector<double> x{1.0, 3.0, 2.0, -4.0, 5.0, 7.0, 0.5, 1.5};
  const auto pilot = mobius_estimate(std::span(x).first(4), kI).estimate;
  const auto r = two_step_mobius(x, kI);
  EXPECT_EQ(r.alpha, Complex(-pilot.real(), pilot.imag()));
  EXPECT_EQ(r.estimate, mobius_estimate(std::span(x).subspan(4), r.alpha).estimate);
}

TEST(TwoStep, LargeSampleEstimate) {
  const auto x = sample(CauchyParams(0.0, 1.0), 53, 10000);
  EXPECT_LT(std::abs(two_step_mobius(x, {3.0, 0.2}).estimate - kI), 0.1);
}

TEST(TwoStep, VarianceNearCramerRaoForSecondStage) {
  const CauchyParams p(0.0, 1.0);
  const std::size_t n = 2000;
  const std::size_t reps = 20000;
  std::vector<Complex> est(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = sample(p, 100000 + r, n);
    est[r] = two_step_mobius(x, {1.0, 2.0}).estimate;
  }
  const auto s = axis_stats(est);
  const double var = (s.se_re * s.se_re + s.se_im * s.se_im) * static_cast<double>(reps);
  EXPECT_NEAR(static_cast<double>(n / 2) * var, 4.0, 0.15 * 4.0);
}

}  // namespace
}  // namespace qamc
