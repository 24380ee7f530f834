#pragma once

#include <cstddef>
#include <vector>

#include "defprior/quadrature.hpp"

namespace defprior {

// Jeffreys prior for theta = |beta| when the sign carries a Bernoulli(1/2)
// prior, so that B | theta is an equal mixture of N(theta, se^2) and
// N(-theta, se^2).

/// f(b | theta) = [phi((b + theta)/se) + phi((b - theta)/se)] / (2 se).
double mixture_density(double b, double theta, double se);

/// d/dtheta log f(b | theta), including the 1/se^2 factor.
double score_theta(double b, double theta, double se);

/// Fisher information E_theta[score^2], integrated over b on
/// [-(theta + 12 se), theta + 12 se] using evenness in b.
/// Throws NumericalError if the quadrature tolerance is not reached.
double fisher_information(double theta, double se,
                          const QuadratureConfig& cfg = {});

struct JeffreysCurve {
  double se = 1.0;
  std::vector<double> theta;
  /// sqrt(I(theta)), unnormalized.
  std::vector<double> density;
};

/// sqrt(I(theta)) on a uniform grid of n_points over [0, theta_max].
JeffreysCurve jeffreys_curve(double se, double theta_max,
                             std::size_t n_points = 201,
                             const QuadratureConfig& cfg = {});

}  // namespace defprior
