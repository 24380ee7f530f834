#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace defprior {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  /// Number of equal panels the range is split into before adaptation.
  std::size_t initial_panels = 8;
  std::size_t max_subintervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subintervals = 0;
  bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over [lo, hi].
/// Interior break points (discontinuities, kinks, peaks) may be supplied and
/// become panel edges.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureConfig& cfg = {},
                           std::span<const double> breaks = {});

/// As integrate(), but throws NumericalError when the tolerance is not met.
double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureConfig& cfg = {},
                          std::span<const double> breaks = {});

}  // namespace defprior
