#pragma once

// Seeded Monte-Carlo and oracle checks of the default-prior results. Every
// check draws from its own named stream (see random.hpp), so reports are
// reproducible bit-for-bit given (seed, n).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace defprior {

enum class CheckStatus { passed, failed, skipped };

/// Direction in which `statistic` must compare with `threshold` to pass.
enum class PassWhen { below, at_most, at_least };

struct SimulationReport {
  std::string name;
  std::size_t n_draws = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  PassWhen pass_when = PassWhen::below;
  bool passed = false;
  CheckStatus status = CheckStatus::failed;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> details;
};

/// Sets `passed` and `status` from statistic, threshold and direction.
void settle(SimulationReport& report);

inline constexpr std::uint64_t kDefaultSeed = 20190404;

/// Kolmogorov-Smirnov distance of n draws of P(beta > 0 | B) = Phi(B/(sqrt2 se))
/// from Uniform(0, 1), with beta ~ N(0, (prior_sd_ratio se)^2) and
/// B | beta ~ N(beta, se^2). Passes when D < 1.63 / sqrt(n). The default
/// ratio 1 is the model under which uniformity holds; other ratios exist to
/// show the check has power. Requires n >= 1000.
SimulationReport sign_probability_uniformity(double se, std::size_t n,
                                     std::uint64_t seed,
                                     double prior_sd_ratio = 1.0);

/// Coverage of [B - z se, B + z se] at a fixed beta; passes within 4 binomial
/// standard errors of 0.95. Requires n >= 1000.
SimulationReport frequentist_coverage(double beta, double se, std::size_t n,
                                      std::uint64_t seed);

struct CoverageBin {
  double p_lo = 0.0;
  double p_hi = 0.0;
  std::size_t count = 0;
  double empirical = 0.0;
  double expected = 0.0;
  double binomial_se = 0.0;
};

struct ConditionalCoverageSim {
  /// Coverage of [B/2 - z se/sqrt2, B/2 + z se/sqrt2] under the joint model.
  SimulationReport shrunken_interval;
  /// Largest |empirical - expected| / binomial SE over p-value bins for the
  /// standard interval.
  SimulationReport binned_standard_interval;
  std::vector<CoverageBin> bins;
};

/// Requires n >= 10^4.
ConditionalCoverageSim conditional_coverage_sim(double se, std::size_t n,
                                                std::uint64_t seed);

/// Empirical frequency of beta > 0 against the analytic sign probability,
/// binned by the latter; passes when no bin deviates by 3 or more SEs.
SimulationReport sign_probability_calibration(double se, std::size_t n,
                                              std::uint64_t seed);

/// Largest excess of the sign-agreement probability over Phi(|b|/se) across
/// normal, Laplace and uniform priors at several scales and b/se in
/// {0.1, 0.5, 1, 1.96, 3}; passes when at most 1e-8.
SimulationReport sign_agreement_sweep();

struct EbRecoveryOptions {
  double phi = 1.6384;
  double sigma = 0.5;
  std::size_t n_studies = 50;
  std::size_t records_per_study = 12;
  std::size_t replications = 20;
};

/// Two reports: replications where |sqrt(phi_hat) - sqrt(phi)| <= 3 SE (pass
/// at >= 90%), and empirical coverage of the 95% CI for sqrt(phi) (pass at
/// >= 80%).
std::vector<SimulationReport> eb_recovery(std::uint64_t seed,
                                          const EbRecoveryOptions& options = {});

/// Mixed fit with sigma fixed at 0 against mean(z^2) - 1; passes within 1e-6.
SimulationReport eb_pooled_consistency(std::uint64_t seed);

/// Mixed fit on null data (phi = sigma = 0); passes when the Wald lower bound
/// for phi is not positive, i.e. sqrt(phi) is indistinguishable from 0.
SimulationReport eb_null_calibration(std::uint64_t seed);

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 100000;
  /// 0 skips the empirical-Bayes checks.
  std::size_t eb_replications = 20;
};

std::vector<SimulationReport> run_all(const RunOptions& options = {});

/// True when no report failed (skipped reports do not fail the run).
bool all_passed(std::span<const SimulationReport> reports);

}  // namespace defprior
