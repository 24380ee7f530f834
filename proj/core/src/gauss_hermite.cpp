#include "defprior/gauss_hermite.hpp"

#include <cmath>
#include <sstream>

#include "defprior/errors.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior {

GaussHermiteRule gauss_hermite_normal(std::size_t n) {
  if (n == 0 || n > 400) throw DomainError("Gauss-Hermite order must be 1..400");

  // Roots of the physicists' Hermite polynomial by Newton iteration on the
  // orthonormal recurrence (no overflow for large n), with the classic
  // asymptotic starting values for the largest roots.
  constexpr double pim4 = 0.7511255444649425;  // pi^(-1/4)
  constexpr int max_iter = 100;
  const double nd = static_cast<double>(n);
  std::vector<double> x(n), w(n);
  const std::size_t half = (n + 1) / 2;
  double z = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * nd + 1.0) - 1.85575 * std::pow(2.0 * nd + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(nd, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double derivative = 0.0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 -
             std::sqrt(jd / (jd + 1.0)) * p3;
      }
      derivative = std::sqrt(2.0 * nd) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (iter == max_iter) {
      std::ostringstream os;
      os << "n=" << n << " root index=" << i << " last=" << z;
      throw NumericalError("Gauss-Hermite root iteration did not converge",
                           os.str());
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (derivative * derivative);
    w[n - 1 - i] = w[i];
  }

  // Change of variable to the standard normal weight.
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = kSqrt2 * x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i] * inv_sqrt_pi;
  }
  return rule;
}

}  // namespace defprior
