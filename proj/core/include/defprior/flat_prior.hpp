#pragma once

#include <string>

#include "defprior/posterior.hpp"
#include "defprior/quadrature.hpp"

namespace defprior {

enum class PriorFamily { normal, laplace, uniform_interval };

/// A unimodal prior density symmetric about zero, from a closed set of
/// families. `scale` is the sd (normal), the exponential scale (Laplace) or
/// the half-width a of Uniform[-a, a].
class SymmetricPrior {
 public:
  SymmetricPrior(PriorFamily family, double scale);

  PriorFamily family() const noexcept { return family_; }
  double scale() const noexcept { return scale_; }
  double density(double beta) const;
  std::string describe() const;

  /// Checks symmetry and monotone decay on [0, inf) over a grid.
  bool satisfies_invariants(int grid_points = 401) const;

 private:
  PriorFamily family_;
  double scale_;
};

/// E(|beta| | B = b) under the flat prior: the folded-normal mean at (b, se).
double flat_abs_posterior_mean(const Estimate& est);

/// E_beta|B| - |beta|, the bias of |B| as an estimator of |beta|.
double abs_estimator_bias(double beta, double se);

/// P(sgn beta = sgn B | B = b) under a symmetric unimodal prior, by adaptive
/// quadrature. Throws DomainError when b = 0.
double sign_agreement_under_prior(const SymmetricPrior& prior,
                                  const Estimate& est,
                                  const QuadratureConfig& cfg = {});

}  // namespace defprior
