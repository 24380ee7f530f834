#include "defprior/posterior.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "defprior/errors.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior {

namespace {

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("credible level must lie in (0, 1)");
  }
}

// Posterior N(mean, sd^2) of beta given B = b.
struct NormalPosterior {
  double mean;
  double sd;
};

NormalPosterior normal_posterior(const Estimate& est, const PriorSpec& prior) {
  if (prior.is_flat()) return {est.b(), est.se()};
  const double tau2 = prior.tau() * prior.tau();
  const double shrink = tau2 / (1.0 + tau2);
  return {est.b() * shrink, est.se() * std::sqrt(shrink)};
}

}  // namespace

Estimate::Estimate(double b, double se) : b_(b), se_(se) {
  if (!std::isfinite(b)) throw DomainError("estimate b must be finite");
  if (!(se > 0.0) || !std::isfinite(se)) {
    throw DomainError("standard error must be positive and finite");
  }
}

PriorSpec PriorSpec::normal(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("prior ratio tau must be positive and finite");
  }
  PriorSpec p;
  p.kind_ = PriorKind::zero_mean_normal;
  p.tau_ = tau;
  return p;
}

PriorSpec PriorSpec::flat() {
  PriorSpec p;
  p.kind_ = PriorKind::flat;
  p.tau_ = std::numeric_limits<double>::infinity();
  return p;
}

double PriorSpec::tau() const noexcept {
  return is_flat() ? std::numeric_limits<double>::infinity() : tau_;
}

std::string PriorSpec::describe() const {
  if (is_flat()) return "flat";
  std::ostringstream os;
  os << "N(0, (" << tau_ << " se)^2)";
  return os.str();
}

PosteriorSummary posterior(const Estimate& est, const PriorSpec& prior,
                           double level) {
  require_level(level);
  const NormalPosterior post = normal_posterior(est, prior);
  PosteriorSummary s;
  s.post_mean = post.mean;
  s.post_sd = post.sd;
  s.sign_prob_positive = sign_probability(est, prior);
  s.credible_interval = credible_interval(est, level, prior);
  s.level = level;
  s.conditional_coverage_95 = conditional_coverage(est, prior);
  s.conflict = prior_data_conflict(est).flag;
  s.two_sided_p = two_sided_p(est.z());
  return s;
}

double sign_probability(const Estimate& est, const PriorSpec& prior) {
  if (prior.is_flat()) return std_normal_cdf(est.z());
  // tau / sqrt(1 + tau^2), written to stay accurate for large tau.
  const double tau = prior.tau();
  const double factor = 1.0 / std::sqrt(1.0 + 1.0 / (tau * tau));
  return std_normal_cdf(est.z() * factor);
}

namespace {

// Phi(shift + w) - Phi(shift - w) is even in shift; evaluating it on the lower
// tail avoids cancellation between two values near 1.
double centered_mass(double shift, double half_width) {
  const double a = std::abs(shift);
  return std_normal_cdf(half_width - a) - std_normal_cdf(-half_width - a);
}

}  // namespace

double conditional_coverage(const Estimate& est) {
  return centered_mass(est.z() / kSqrt2, critical_value_95() * kSqrt2);
}

double conditional_coverage(const Estimate& est, const PriorSpec& prior) {
  const NormalPosterior post = normal_posterior(est, prior);
  const double shift = (est.b() - post.mean) / post.sd;
  return centered_mass(shift, critical_value_95() * est.se() / post.sd);
}

CoverageCurve coverage_curve(std::span<const double> p_grid) {
  CoverageCurve curve;
  curve.points.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw DomainError("coverage_curve: p-values must lie in (0, 1]");
    }
    const double z = abs_z_from_two_sided_p(p);
    curve.points.push_back({p, z, conditional_coverage(Estimate(z, 1.0))});
  }
  return curve;
}

Interval credible_interval(const Estimate& est, double level,
                           const PriorSpec& prior) {
  require_level(level);
  const NormalPosterior post = normal_posterior(est, prior);
  const double z = std_normal_quantile(0.5 * (1.0 + level));
  return {post.mean - z * post.sd, post.mean + z * post.sd};
}

ConflictCheck prior_data_conflict(const Estimate& est) {
  ConflictCheck c;
  c.flag = two_sided_p(est.z()) < kConflictPThreshold;
  c.marginal_tail_prob = two_sided_p(est.z() / kSqrt2);
  return c;
}

double implied_se(double b, double two_sided_p_value) {
  if (!std::isfinite(b) || b == 0.0) {
    throw DomainError("implied_se: b must be finite and nonzero");
  }
  if (!(two_sided_p_value > 0.0 && two_sided_p_value < 1.0)) {
    throw DomainError("implied_se: p must lie in (0, 1)");
  }
  return std::abs(b) / abs_z_from_two_sided_p(two_sided_p_value);
}

}  // namespace defprior
