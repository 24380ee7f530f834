#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "defprior/errors.hpp"
#include "defprior/quadrature.hpp"
#include "defprior/stats_kernel.hpp"
#include "support/reference_values.hpp"

namespace defprior {
namespace {

namespace ref = testing;

// Long-double erfc is an independent evaluation path for randomized checks.
double cdf_oracle(double x) {
  return static_cast<double>(0.5L * std::erfc(-static_cast<long double>(x) /
                                              std::sqrt(2.0L)));
}

TEST(StdNormalPdf, KnownValues) {
  EXPECT_DOUBLE_EQ(std_normal_pdf(0.0), 0.3989422804014327);
  EXPECT_NEAR(std_normal_pdf(1.0), ref::kPdfAt1, 1e-14 * ref::kPdfAt1);
  for (double x : {0.3, 1.7, 4.2, 9.0}) {
    EXPECT_EQ(std_normal_pdf(x), std_normal_pdf(-x));
  }
  EXPECT_THROW(std_normal_pdf(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(StdNormalCdf, KnownValuesAndLimits) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.96), ref::kCdfAt196, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-8.0), ref::kCdfAtMinus8, 1e-14 * ref::kCdfAtMinus8);
  EXPECT_NEAR(std_normal_cdf(-30.0), ref::kCdfAtMinus30, 1e-12 * ref::kCdfAtMinus30);
  EXPECT_EQ(std_normal_cdf(-std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(std_normal_cdf(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_THROW(std_normal_cdf(std::nan("")), DomainError);
}

TEST(StdNormalCdf, ReflectionAndOracleOnRandomGrid) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unif(-12.0, 12.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = unif(gen);
    EXPECT_NEAR(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, 1e-14) << x;
    EXPECT_NEAR(std_normal_cdf(x), cdf_oracle(x), 1e-14) << x;
  }
}

TEST(StdNormalQuantile, KnownValues) {
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  EXPECT_NEAR(std_normal_quantile(0.975), ref::kQuantile975, 1e-12);
  EXPECT_NEAR(std_normal_quantile(0.025), -std_normal_quantile(0.975), 1e-14);
  EXPECT_NEAR(std_normal_quantile(1e-10), ref::kQuantile1em10, 1e-10);
  EXPECT_NEAR(std_normal_quantile(0.0005), ref::kQuantile0005, 1e-12);
}

TEST(StdNormalQuantile, DomainErrors) {
  for (double p : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
    EXPECT_THROW(std_normal_quantile(p), DomainError) << p;
  }
}

TEST(StdNormalQuantile, InverseProperty) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double p = unif(gen);
    if (p == 0.0) continue;
    EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-12) << p;
  }
  // Only the lower tail: above 0 the cdf rounds towards 1 and loses x.
  for (double x = -6.0; x <= 0.0; x += 0.01) {
    EXPECT_NEAR(std_normal_quantile(std_normal_cdf(x)), x, 1e-9) << x;
  }
}

TEST(FoldedNormalMean, ClosedFormValues) {
  EXPECT_NEAR(folded_normal_mean(0.0, 1.0), ref::kSqrt2OverPi, 1e-15);
  EXPECT_NEAR(folded_normal_mean(10.0, 1.0), 10.0, 1e-10);
  EXPECT_NEAR(folded_normal_mean(1.0, 1.0), ref::kFoldedMean11, 1e-14);
  EXPECT_THROW(folded_normal_mean(1.0, 0.0), DomainError);
  EXPECT_THROW(folded_normal_mean(1.0, -2.0), DomainError);
}

TEST(FoldedNormalMean, MonteCarloAtUnitMean) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> normal(1.0, 1.0);
  constexpr int n = 10'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(normal(gen));
    sum += a;
    sum_sq += a * a;
  }
  const double mean = sum / n;
  const double mc_se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(folded_normal_mean(1.0, 1.0), mean, 4.0 * mc_se);
}

TEST(FoldedNormalMean, JensenBiasAndMaximumAtZero) {
  double best_mu = 1.0;
  double best_bias = -1.0;
  for (int i = -500; i <= 500; ++i) {
    const double mu = i / 100.0;
    const double bias = folded_normal_mean(mu, 1.0) - std::abs(mu);
    EXPECT_GE(bias, 0.0) << mu;
    if (bias > best_bias) {
      best_bias = bias;
      best_mu = mu;
    }
  }
  EXPECT_EQ(best_mu, 0.0);
  EXPECT_NEAR(best_bias, ref::kSqrt2OverPi, 1e-15);
  // Strict for moderate |mu|; far in the tail the bias underflows.
  for (double mu : {-3.0, -0.5, 0.5, 3.0}) {
    EXPECT_GT(folded_normal_mean(mu, 1.0), std::abs(mu));
  }
}

TEST(GammaLogDensity, ShapeHalfIsScaledChiSquare) {
  // Z^2 for Z ~ N(0, 1) has density phi(sqrt x) / sqrt x.
  for (double x : {1e-6, 0.01, 0.5, 1.0, 2.0, 7.5, 30.0}) {
    const double expected = std::log(std_normal_pdf(std::sqrt(x)) / std::sqrt(x));
    EXPECT_NEAR(gamma_log_density(x, 0.5, 1.0), expected, 1e-12) << x;
  }
  EXPECT_NEAR(gamma_log_density(1.0, 0.5, 1.0), ref::kLogPdfAt1, 1e-14);
}

TEST(GammaLogDensity, ScaleFamilyOnRandomPairs) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ux(0.01, 20.0);
  std::uniform_real_distribution<double> um(0.05, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double x = ux(gen);
    const double m = um(gen);
    EXPECT_NEAR(gamma_log_density(x, 0.5, m),
                -std::log(m) + gamma_log_density(x / m, 0.5, 1.0), 1e-12);
  }
}

TEST(GammaLogDensity, IntegratesToOne) {
  for (double shape : {0.5, 1.0, 3.0}) {
    for (double mean : {0.3, 1.0, 2.6384}) {
      // x = u^2 removes the x^(-1/2) endpoint singularity at shape 1/2;
      // Gauss-Kronrod never evaluates the endpoint u = 0.
      auto f = [&](double u) {
        return 2.0 * u * std::exp(gamma_log_density(u * u, shape, mean));
      };
      QuadratureConfig cfg;
      cfg.abs_tol = 1e-12;
      const double total = integrate_or_throw(f, 0.0, std::sqrt(200.0 * mean), cfg);
      EXPECT_NEAR(total, 1.0, 1e-8) << shape << " " << mean;
    }
  }
}

TEST(GammaLogDensity, DomainErrors) {
  EXPECT_THROW(gamma_log_density(0.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(gamma_log_density(1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(gamma_log_density(1.0, 0.5, -1.0), DomainError);
}

TEST(PValueConversion, TwoSidedRoundTrip) {
  EXPECT_NEAR(abs_z_from_two_sided_p(0.05), ref::kQuantile975, 1e-12);
  EXPECT_EQ(abs_z_from_two_sided_p(1.0), 0.0);
  for (double z = 0.01; z < 8.0; z += 0.037) {
    EXPECT_NEAR(abs_z_from_two_sided_p(two_sided_p(z)), z, 1e-9) << z;
  }
  EXPECT_THROW(abs_z_from_two_sided_p(0.0), DomainError);
  EXPECT_THROW(abs_z_from_two_sided_p(1.2), DomainError);
}

}  // namespace
}  // namespace defprior
