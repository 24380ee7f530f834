#include "defprior/flat_prior.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "defprior/errors.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior {

SymmetricPrior::SymmetricPrior(PriorFamily family, double scale)
    : family_(family), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("symmetric prior scale must be positive and finite");
  }
}

double SymmetricPrior::density(double beta) const {
  const double a = std::abs(beta);
  switch (family_) {
    case PriorFamily::normal:
      return std_normal_pdf(a / scale_) / scale_;
    case PriorFamily::laplace:
      return std::exp(-a / scale_) / (2.0 * scale_);
    case PriorFamily::uniform_interval:
      return a <= scale_ ? 0.5 / scale_ : 0.0;
  }
  return 0.0;
}

std::string SymmetricPrior::describe() const {
  std::ostringstream os;
  switch (family_) {
    case PriorFamily::normal: os << "normal"; break;
    case PriorFamily::laplace: os << "laplace"; break;
    case PriorFamily::uniform_interval: os << "uniform"; break;
  }
  os << "(scale=" << scale_ << ")";
  return os.str();
}

bool SymmetricPrior::satisfies_invariants(int grid_points) const {
  const double reach = 5.0 * scale_;
  double previous = density(0.0);
  for (int i = 0; i < grid_points; ++i) {
    const double x = reach * i / (grid_points - 1);
    const double d = density(x);
    if (d < 0.0 || d != density(-x) || d > previous) return false;
    previous = d;
  }
  return true;
}

double flat_abs_posterior_mean(const Estimate& est) {
  return folded_normal_mean(est.b(), est.se());
}

double abs_estimator_bias(double beta, double se) {
  return folded_normal_mean(beta, se) - std::abs(beta);
}

double sign_agreement_under_prior(const SymmetricPrior& prior,
                                  const Estimate& est,
                                  const QuadratureConfig& cfg) {
  const double b = est.b();
  const double se = est.se();
  if (b == 0.0) throw DomainError("sign agreement is undefined at b = 0");

  double reach = std::abs(b) + 12.0 * se * (1.0 + prior.scale() / se);
  if (prior.family() == PriorFamily::uniform_interval) {
    reach = std::min(reach, prior.scale());
  }
  auto integrand = [&](double beta) {
    return prior.density(beta) * std_normal_pdf((b - beta) / se);
  };

  // Relative accuracy on each half keeps the ratio within the absolute
  // tolerance even when the marginal density of b is small.
  QuadratureConfig half_cfg = cfg;
  half_cfg.rel_tol = std::max(cfg.rel_tol, 1e-3 * cfg.abs_tol);
  half_cfg.abs_tol = 1e-300;

  const double sign = b > 0.0 ? 1.0 : -1.0;
  std::vector<double> breaks;
  for (double k : {-6.0, -2.0, 0.0, 2.0, 6.0}) {
    const double x = std::abs(b) + k * se;
    if (x > 0.0 && x < reach) breaks.push_back(x);
  }
  // Integrate over |beta| on each side: agree = sgn(beta) == sgn(b).
  auto agree = [&](double t) { return integrand(sign * t); };
  auto disagree = [&](double t) { return integrand(-sign * t); };
  const double same = integrate_or_throw(agree, 0.0, reach, half_cfg, breaks);
  const double other = integrate_or_throw(disagree, 0.0, reach, half_cfg);
  return same / (same + other);
}

}  // namespace defprior
