#include <gtest/gtest.h>

#include <cmath>

#include "defprior/errors.hpp"
#include "defprior/flat_prior.hpp"
#include "defprior/stats_kernel.hpp"
#include "support/reference_values.hpp"

namespace defprior {
namespace {

TEST(SymmetricPrior, InvariantsHoldForEveryFamily) {
  for (PriorFamily fam :
       {PriorFamily::normal, PriorFamily::laplace, PriorFamily::uniform_interval}) {
    for (double scale : {0.1, 1.0, 20.0}) {
      const SymmetricPrior prior(fam, scale);
      EXPECT_TRUE(prior.satisfies_invariants()) << prior.describe();
      EXPECT_EQ(prior.density(0.7 * scale), prior.density(-0.7 * scale));
    }
  }
  EXPECT_THROW(SymmetricPrior(PriorFamily::normal, 0.0), DomainError);
  EXPECT_THROW(SymmetricPrior(PriorFamily::laplace, -2.0), DomainError);
}

TEST(SymmetricPrior, DensitiesIntegrateToOne) {
  for (PriorFamily fam :
       {PriorFamily::normal, PriorFamily::laplace, PriorFamily::uniform_interval}) {
    const SymmetricPrior prior(fam, 1.5);
    const double breaks[] = {1.5};
    const double mass =
        2.0 * integrate([&](double x) { return prior.density(x); }, 0.0, 60.0, {}, breaks).value;
    EXPECT_NEAR(mass, 1.0, 1e-8) << prior.describe();
  }
}

TEST(FlatPrior, AbsPosteriorMeanIsFoldedNormalMean) {
  EXPECT_NEAR(flat_abs_posterior_mean(Estimate(1.0, 1.0)), testing::kFoldedMean11, 1e-14);
  EXPECT_NEAR(flat_abs_posterior_mean(Estimate(0.0, 1.0)), testing::kSqrt2OverPi, 1e-15);
  EXPECT_GT(flat_abs_posterior_mean(Estimate(-0.3, 2.0)), 0.3);
}

TEST(FlatPrior, BiasOfAbsoluteEstimate) {
  EXPECT_NEAR(abs_estimator_bias(0.0, 1.0), testing::kSqrt2OverPi, 1e-15);
  EXPECT_NEAR(abs_estimator_bias(1.0, 1.0), testing::kFoldedMean11 - 1.0, 1e-14);
  EXPECT_GT(abs_estimator_bias(5.0, 1.0), 0.0);
  EXPECT_LT(abs_estimator_bias(5.0, 1.0), 1e-5);
  double previous = abs_estimator_bias(0.0, 1.0);
  for (double beta = 0.1; beta <= 6.0; beta += 0.1) {
    const double bias = abs_estimator_bias(beta, 1.0);
    EXPECT_GT(bias, 0.0);
    EXPECT_LT(bias, previous);
    previous = bias;
  }
}

TEST(SignAgreement, NormalPriorMatchesClosedForm) {
  for (double s : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    for (double b : {-3.0, -0.4, 0.1, 1.0, 1.96}) {
      const Estimate est(b, 1.0);
      const double closed = std_normal_cdf(std::abs(b) * s / std::sqrt(s * s + 1.0));
      EXPECT_NEAR(sign_agreement_under_prior(SymmetricPrior(PriorFamily::normal, s), est),
                  closed, 1e-9)
          << s << " " << b;
    }
  }
}

TEST(SignAgreement, WideUniformApproachesFlatLimit) {
  const Estimate est(1.3, 0.9);
  const double flat = std_normal_cdf(1.3 / 0.9);
  const double wide =
      sign_agreement_under_prior(SymmetricPrior(PriorFamily::uniform_interval, 200.0), est);
  EXPECT_NEAR(wide, flat, 1e-9);
}

TEST(SignAgreement, BoundedByFlatPriorValue) {
  for (PriorFamily fam :
       {PriorFamily::normal, PriorFamily::laplace, PriorFamily::uniform_interval}) {
    for (double scale : {0.05, 0.3, 1.0, 4.0, 30.0}) {
      const SymmetricPrior prior(fam, scale);
      for (double z : {0.05, 0.5, 1.0, 2.0, 3.5}) {
        for (double sign : {-1.0, 1.0}) {
          const Estimate est(sign * z * 0.7, 0.7);
          const double agree = sign_agreement_under_prior(prior, est);
          EXPECT_GE(agree, 0.5 - 1e-12);
          EXPECT_LE(agree, std_normal_cdf(z) + 1e-8) << prior.describe() << " z=" << z;
        }
      }
    }
  }
}

TEST(SignAgreement, UndefinedAtZero) {
  EXPECT_THROW(sign_agreement_under_prior(SymmetricPrior(PriorFamily::laplace, 1.0),
                                          Estimate(0.0, 1.0)),
               DomainError);
}

}  // namespace
}  // namespace defprior
