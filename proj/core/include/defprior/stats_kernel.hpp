#pragma once

// Normal and Gamma special functions shared by every other module.
// All functions are pure; domain violations throw DomainError.

namespace defprior {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;

double std_normal_pdf(double x);

/// Phi(x). Accepts +/-infinity; absolute error below 1e-14.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x) without cancellation.
double std_normal_sf(double x);

/// Phi^{-1}(p) for p in (0, 1).
double std_normal_quantile(double p);

/// E|X| for X ~ N(mu, sd^2).
double folded_normal_mean(double mu, double sd);

/// Log density at x of the Gamma distribution with the given shape and mean
/// (scale = mean / shape).
double gamma_log_density(double x, double shape, double mean);

/// Two-sided p-value 2 Phi(-|z|).
double two_sided_p(double z);

/// |Phi^{-1}(p / 2)| for a two-sided p-value p in (0, 1].
double abs_z_from_two_sided_p(double p);

/// Phi^{-1}(0.975), the two-sided 95% critical value.
double critical_value_95();

}  // namespace defprior
