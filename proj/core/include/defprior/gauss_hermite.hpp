#pragma once

#include <cstddef>
#include <vector>

namespace defprior {

/// Nodes and weights with sum_i w_i g(x_i) ~= E[g(Z)], Z ~ N(0, 1).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, exact for polynomials of degree up to 2n - 1.
GaussHermiteRule gauss_hermite_normal(std::size_t n);

}  // namespace defprior
