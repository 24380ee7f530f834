#include "defprior/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "defprior/errors.hpp"

namespace defprior {

namespace {

// Kronrod abscissae and weights (QUADPACK qk15); the odd-indexed abscissae
// are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double lo,
                         double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureConfig& cfg,
                           std::span<const double> breaks) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo)) {
    throw DomainError("integrate: need finite lo <= hi");
  }
  QuadratureResult result;
  if (hi == lo) {
    result.converged = true;
    return result;
  }

  std::vector<double> edges{lo};
  std::vector<double> inner(breaks.begin(), breaks.end());
  std::sort(inner.begin(), inner.end());
  const std::size_t panels = std::max<std::size_t>(cfg.initial_panels, 1);
  for (std::size_t k = 1; k <= panels; ++k) {
    inner.push_back(lo + (hi - lo) * static_cast<double>(k) /
                             static_cast<double>(panels));
  }
  std::sort(inner.begin(), inner.end());
  for (double e : inner) {
    if (e > edges.back() && e <= hi) edges.push_back(e);
  }
  if (edges.back() < hi) edges.push_back(hi);

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    Segment s = gauss_kronrod_15(f, edges[k], edges[k + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }
  result.evaluations = 15 * heap.size();

  auto tolerance = [&] {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  };

  while (total_error > tolerance() && heap.size() < cfg.max_subintervals) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // no room to bisect
    heap.pop();
    Segment left = gauss_kronrod_15(f, worst.lo, mid);
    Segment right = gauss_kronrod_15(f, mid, worst.hi);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments so the running update does not accumulate drift.
  total = 0.0;
  total_error = 0.0;
  result.subintervals = heap.size();
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (const Segment& s : segments) {
    total += s.value;
    total_error += s.error;
  }
  result.value = total;
  result.abs_error = total_error;
  result.converged = total_error <= tolerance();
  return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const QuadratureConfig& cfg,
                          std::span<const double> breaks) {
  const QuadratureResult r = integrate(f, lo, hi, cfg, breaks);
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream os;
    os << "range=[" << lo << ", " << hi << "] value=" << r.value
       << " error_estimate=" << r.abs_error << " tolerance=" << cfg.abs_tol
       << " subintervals=" << r.subintervals
       << " evaluations=" << r.evaluations;
    throw NumericalError("adaptive quadrature did not converge", os.str());
  }
  return r.value;
}

}  // namespace defprior
