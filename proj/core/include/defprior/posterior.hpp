#pragma once

#include <span>
#include <string>
#include <vector>

namespace defprior {

/// An observed coefficient estimate b with its standard error se.
class Estimate {
 public:
  /// Throws DomainError unless b is finite and se is positive and finite.
  Estimate(double b, double se);

  double b() const noexcept { return b_; }
  double se() const noexcept { return se_; }
  double z() const noexcept { return b_ / se_; }

 private:
  double b_;
  double se_;
};

enum class PriorKind { zero_mean_normal, flat };

/// Zero-mean normal prior with sd = tau * se, or the improper flat prior.
class PriorSpec {
 public:
  /// The default prior N(0, se^2).
  PriorSpec() = default;

  static PriorSpec normal(double tau = 1.0);
  static PriorSpec flat();

  PriorKind kind() const noexcept { return kind_; }
  bool is_flat() const noexcept { return kind_ == PriorKind::flat; }
  /// Prior-sd-to-se ratio; +infinity for the flat prior.
  double tau() const noexcept;
  std::string describe() const;

 private:
  PriorKind kind_ = PriorKind::zero_mean_normal;
  double tau_ = 1.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo < x && x < hi; }
};

struct PosteriorSummary {
  double post_mean = 0.0;
  double post_sd = 0.0;
  double sign_prob_positive = 0.5;
  Interval credible_interval;
  double level = 0.95;
  /// Posterior probability that [b - z se, b + z se] (z the 95% critical
  /// value) contains beta.
  double conditional_coverage_95 = 0.95;
  bool conflict = false;
  double two_sided_p = 1.0;
};

/// Two-sided p-value below which the default prior is considered in conflict
/// with the data.
inline constexpr double kConflictPThreshold = 0.001;

PosteriorSummary posterior(const Estimate& est, const PriorSpec& prior = {},
                           double level = 0.95);

/// P(beta > 0 | B = b).
double sign_probability(const Estimate& est, const PriorSpec& prior = {});

/// Conditional coverage of the standard 95% interval under the default prior:
/// Phi(b / (sqrt2 se) + z sqrt2) - Phi(b / (sqrt2 se) - z sqrt2).
double conditional_coverage(const Estimate& est);

/// Same quantity under an arbitrary prior (0.95 for the flat prior).
double conditional_coverage(const Estimate& est, const PriorSpec& prior);

struct CoveragePoint {
  double p_value;
  double z_abs;
  double coverage;
};

struct CoverageCurve {
  std::vector<CoveragePoint> points;
};

/// Conditional coverage as a function of the two-sided p-value. Each p must
/// lie in (0, 1]; p = 1 corresponds to b = 0.
CoverageCurve coverage_curve(std::span<const double> p_grid);

/// Equal-tailed credible interval at the given level.
Interval credible_interval(const Estimate& est, double level,
                           const PriorSpec& prior = {});

struct ConflictCheck {
  bool flag = false;
  /// P(|B| >= |b|) under the marginal B ~ N(0, 2 se^2) of the default prior.
  double marginal_tail_prob = 1.0;
};

ConflictCheck prior_data_conflict(const Estimate& est);

/// se = |b| / |Phi^{-1}(p / 2)| for a two-sided p-value p.
double implied_se(double b, double two_sided_p);

}  // namespace defprior
