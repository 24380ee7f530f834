#pragma once

// Hierarchical model for collections of two-sided p-values:
//   phi_j ~ N(phi, sigma^2)                 (one effect per study)
//   Z_ij^2 | phi_j ~ Gamma(shape 1/2, mean phi_j + 1)
// sqrt(phi) is the ratio of the prior sd of a coefficient to its standard
// error; phi = 1 is the default prior.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "defprior/posterior.hpp"

namespace defprior {

/// Records with p at or below this value are not collected.
inline constexpr double kCensorPThreshold = 0.001;
/// Smallest |z| used in the likelihood; shape-1/2 Gamma densities diverge at 0.
inline constexpr double kMinAbsZ = 1e-8;
/// Log-likelihood assigned where the Gamma mean phi_j + 1 is not positive.
inline constexpr double kLogSentinel = -1e10;

struct RawRecord {
  std::string study_id;
  double p_value = 0.0;
  /// 1-based source line, 0 when not read from a file.
  std::size_t line = 0;
};

struct ZRecord {
  std::string study_id;
  double p_value = 0.0;
  double z_abs = 0.0;
  double z_sq = 0.0;
};

/// Converts a two-sided p in (0, 1] to |z| and z^2, flooring |z| at kMinAbsZ.
ZRecord make_zrecord(std::string study_id, double p_value);

struct StudyGroup {
  std::string study_id;
  std::vector<ZRecord> records;
};

using Dataset = std::vector<StudyGroup>;

inline constexpr const char* kReasonCensored = "censored-by-protocol";
inline constexpr const char* kReasonInvalid = "invalid";

struct DroppedRecord {
  RawRecord record;
  std::string reason;
  std::string detail;
};

struct IngestResult {
  Dataset dataset;
  std::vector<DroppedRecord> dropped;
  std::vector<std::string> warnings;
};

/// Drops p <= 0.001 (censored) and p outside (0, 1] (invalid), converts the
/// rest and groups them by study. Groups are ordered by study_id; records
/// keep their input order.
IngestResult ingest(std::span<const RawRecord> records);

std::size_t record_count(const Dataset& dataset);
double mean_z_sq(const Dataset& dataset);

struct FitConfig {
  std::size_t gh_nodes = 40;
  /// Convergence tolerance on the log-likelihood spread of the simplex.
  double f_tol = 1e-8;
  /// Convergence tolerance on the parameters (phi, log sigma).
  double x_tol = 1e-7;
  std::size_t max_iterations = 2000;
  double epsilon_mean = 1e-12;
  /// When set, sigma is held at this value and only phi is estimated.
  std::optional<double> fixed_sigma;
  /// Box on log sigma searched by the optimizer.
  double log_sigma_min = std::log(1e-8);
  double log_sigma_max = std::log(1e2);
};

/// sum_i log Gamma(z_ij^2; shape 1/2, mean phi_j + 1), or kLogSentinel when
/// phi_j + 1 <= epsilon_mean.
double study_conditional_loglik(const StudyGroup& group, double phi_j,
                                const FitConfig& cfg = {});

/// Sum over studies of log E[exp(study_conditional_loglik(j, phi_j))] with
/// phi_j ~ N(phi, sigma^2), by Gauss-Hermite quadrature and log-sum-exp.
double marginal_loglik(double phi, double sigma, const Dataset& dataset,
                       const FitConfig& cfg = {});

enum class ModelKind { mixed, marginal };

struct EBFit {
  ModelKind model_kind = ModelKind::mixed;
  double phi = 0.0;
  double sigma = 0.0;
  double phi_se = 0.0;
  Interval phi_ci;
  double sqrt_phi = 0.0;
  /// Delta-method standard error of sqrt(phi).
  double sqrt_phi_se = 0.0;
  Interval sqrt_phi_ci;
  double log_likelihood = 0.0;
  bool converged = false;
  bool nonpositive_phi = false;
  std::size_t n_records = 0;
  std::size_t n_studies = 0;
  /// Covariance of (phi, log sigma).
  std::array<std::array<double, 2>, 2> vcov{};
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::size_t gh_nodes = 0;
  std::string ci_method = "wald-phi-clamped-sqrt";
  bool censoring_corrected = false;
  std::vector<std::string> diagnostics;
};

/// Maximum marginal likelihood over (phi, log sigma) by Nelder-Mead.
/// Requires at least 2 studies and 10 records (ValidationError otherwise).
/// Non-convergence is reported through EBFit::converged.
EBFit fit_mixed(const Dataset& dataset, const FitConfig& cfg = {});

/// Pooled fit: phi = mean(z^2) - 1 with a study-clustered sandwich variance.
/// Requires at least 10 records.
EBFit fit_marginal(const Dataset& dataset);

struct SimulateOptions {
  /// Drop p <= 0.001 records like the collection protocol does.
  bool drop_censored = false;
};

/// Draws phi_j ~ N(phi, sigma^2) restricted to phi_j + 1 > 1e-6 by rejection,
/// then Z_ij ~ N(0, phi_j + 1); records carry p = 2 Phi(-|z|) and the exact
/// simulated |z|. Study ids are S0001, S0002, ...
Dataset simulate_dataset(double phi, double sigma, std::size_t n_studies,
                         std::size_t records_per_study, std::uint64_t seed,
                         const SimulateOptions& options = {});

/// Flattens to (study_id, p) rows in dataset order.
std::vector<RawRecord> to_raw_records(const Dataset& dataset);

}  // namespace defprior
