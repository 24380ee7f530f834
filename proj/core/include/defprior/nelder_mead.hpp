#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace defprior {

struct NelderMeadOptions {
  /// Converged when the spread of objective values across the simplex is
  /// below f_tol and every vertex is within x_tol of the best, per coordinate.
  double f_tol = 1e-8;
  double x_tol = 1e-7;
  std::size_t max_iterations = 2000;
  /// Initial simplex edge per coordinate; defaults to 0.1.
  std::vector<double> initial_step;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Minimizes f from x0 with the standard reflection/expansion/contraction/
/// shrink simplex moves. Non-finite objective values are treated as +inf,
/// which lets callers encode box constraints.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace defprior
