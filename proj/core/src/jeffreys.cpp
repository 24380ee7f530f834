#include "defprior/jeffreys.hpp"

#include <array>
#include <cmath>

#include "defprior/errors.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior {

namespace {

void require_args(double theta, double se) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw DomainError("theta must be finite and nonnegative");
  }
  if (!(se > 0.0) || !std::isfinite(se)) {
    throw DomainError("se must be positive and finite");
  }
}

}  // namespace

double mixture_density(double b, double theta, double se) {
  require_args(theta, se);
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  return (std_normal_pdf((b + theta) / se) + std_normal_pdf((b - theta) / se)) /
         (2.0 * se);
}

double score_theta(double b, double theta, double se) {
  require_args(theta, se);
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  // [-(b+t) phi(u) + (b-t) phi(v)] / (se^2 [phi(u) + phi(v)]) with
  // phi(u)/phi(v) = exp(-2 b t / se^2) reduces to (b tanh(b t/se^2) - t)/se^2.
  const double s2 = se * se;
  return (b * std::tanh(b * theta / s2) - theta) / s2;
}

double fisher_information(double theta, double se,
                          const QuadratureConfig& cfg) {
  require_args(theta, se);
  if (theta == 0.0) return 0.0;
  auto integrand = [&](double b) {
    const double s = score_theta(b, theta, se);
    return s * s * mixture_density(b, theta, se);
  };
  const std::array<double, 1> peak{theta};
  // Half the absolute budget per side of the even integrand.
  QuadratureConfig half = cfg;
  half.abs_tol = 0.25 * cfg.abs_tol;
  return 2.0 * integrate_or_throw(integrand, 0.0, theta + 12.0 * se, half, peak);
}

JeffreysCurve jeffreys_curve(double se, double theta_max, std::size_t n_points,
                             const QuadratureConfig& cfg) {
  if (!(se > 0.0) || !std::isfinite(se)) {
    throw DomainError("jeffreys_curve: se must be positive");
  }
  if (!(theta_max > 0.0) || !std::isfinite(theta_max)) {
    throw DomainError("jeffreys_curve: theta_max must be positive");
  }
  if (n_points < 2) throw DomainError("jeffreys_curve: need at least 2 points");

  JeffreysCurve curve;
  curve.se = se;
  curve.theta.resize(n_points);
  curve.density.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = theta_max * static_cast<double>(i) /
                     static_cast<double>(n_points - 1);
    curve.theta[i] = t;
    curve.density[i] = std::sqrt(fisher_information(t, se, cfg));
  }
  return curve;
}

}  // namespace defprior
