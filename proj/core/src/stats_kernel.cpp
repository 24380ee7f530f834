#include "defprior/stats_kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "defprior/errors.hpp"

namespace defprior {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

// Acklam's rational approximation to the lower-half normal quantile,
// relative error below 1.15e-9 on (0, 0.5].
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_pdf(double x) {
  require_finite(x, "std_normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw DomainError("std_normal_cdf: NaN argument");
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_sf(double x) { return std_normal_cdf(-x); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0, 1), got " +
                      std::to_string(p));
  }
  if (p > 0.5) {
    // 1 - p is exact for p in [0.5, 1).
    return -std_normal_quantile(1.0 - p);
  }
  double x = acklam_lower(p);
  // One Newton step against Phi. On the lower half Phi(x) carries full
  // relative precision, so the residual is not swamped by cancellation.
  const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (density > 0.0) {
    x -= (std_normal_cdf(x) - p) / density;
  }
  return x;
}

double folded_normal_mean(double mu, double sd) {
  require_finite(mu, "folded_normal_mean");
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw DomainError("folded_normal_mean: sd must be positive and finite");
  }
  const double m = std::abs(mu);
  const double ratio = m / sd;
  return m + std::sqrt(2.0 / kPi) * sd * std::exp(-0.5 * ratio * ratio) -
         2.0 * m * std_normal_cdf(-ratio);
}

double gamma_log_density(double x, double shape, double mean) {
  if (!(x > 0.0) || !(shape > 0.0) || !(mean > 0.0) || !std::isfinite(x) ||
      !std::isfinite(shape) || !std::isfinite(mean)) {
    throw DomainError("gamma_log_density: x, shape and mean must be positive");
  }
  const double scale = mean / shape;
  return -std::lgamma(shape) - shape * std::log(scale) +
         (shape - 1.0) * std::log(x) - x / scale;
}

double two_sided_p(double z) {
  if (std::isnan(z)) throw DomainError("two_sided_p: NaN argument");
  return std::erfc(std::abs(z) / kSqrt2);
}

double abs_z_from_two_sided_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("two-sided p-value must lie in (0, 1], got " +
                      std::to_string(p));
  }
  if (p == 1.0) return 0.0;
  return std::abs(std_normal_quantile(0.5 * p));
}

double critical_value_95() {
  static const double z = std_normal_quantile(0.975);
  return z;
}

}  // namespace defprior
