#include "defprior/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "defprior/errors.hpp"

namespace defprior {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DomainError("nelder_mead: empty starting point");

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) {
    const double step =
        i < options.initial_step.size() ? options.initial_step[i] : 0.1;
    simplex[i + 1][i] += step;
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto point_along = [&](const std::vector<double>& worst, double coef,
                         std::vector<double>& out) {
    for (std::size_t k = 0; k < dim; ++k) {
      out[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    }
  };

  for (; result.iterations < options.max_iterations; ++result.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double x_spread = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        x_spread = std::max(x_spread, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    const double f_spread = values[worst] - values[best];
    if (f_spread <= options.f_tol && x_spread <= options.x_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    point_along(simplex[worst], kReflect, trial);
    const double f_reflect = eval(trial);
    if (f_reflect < values[best]) {
      point_along(simplex[worst], kExpand, trial2);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    // Contraction: outside if the reflected point beat the worst vertex.
    const bool outside = f_reflect < values[worst];
    point_along(simplex[worst], outside ? kContract : -kContract, trial2);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace defprior
