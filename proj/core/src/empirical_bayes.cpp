#include "defprior/empirical_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "defprior/errors.hpp"
#include "defprior/gauss_hermite.hpp"
#include "defprior/nelder_mead.hpp"
#include "defprior/random.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior {

namespace {

constexpr double kHalf = 0.5;

// Sufficient statistics of one study for the shape-1/2 Gamma likelihood.
struct StudyStats {
  double n = 0.0;
  double sum_log_x = 0.0;
  double sum_x = 0.0;
};

std::vector<StudyStats> summarize(const Dataset& dataset) {
  std::vector<StudyStats> stats;
  stats.reserve(dataset.size());
  for (const StudyGroup& g : dataset) {
    StudyStats s;
    for (const ZRecord& r : g.records) {
      s.n += 1.0;
      s.sum_log_x += std::log(r.z_sq);
      s.sum_x += r.z_sq;
    }
    stats.push_back(s);
  }
  return stats;
}

// Same value as study_conditional_loglik, from sufficient statistics.
double study_loglik(const StudyStats& s, double phi_j, double epsilon_mean) {
  const double mean = phi_j + 1.0;
  if (!(mean > epsilon_mean)) return kLogSentinel;
  static const double log_gamma_half = std::lgamma(kHalf);
  return s.n * (-log_gamma_half - kHalf * std::log(2.0 * mean)) -
         kHalf * s.sum_log_x - s.sum_x / (2.0 * mean);
}

double marginal_loglik_impl(double phi, double sigma,
                            const std::vector<StudyStats>& stats,
                            const GaussHermiteRule& rule, double epsilon_mean) {
  double total = 0.0;
  if (sigma == 0.0) {
    for (const StudyStats& s : stats) total += study_loglik(s, phi, epsilon_mean);
    return total;
  }
  const std::size_t k = rule.nodes.size();
  std::vector<double> terms(k);
  for (const StudyStats& s : stats) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      terms[i] = study_loglik(s, phi + sigma * rule.nodes[i], epsilon_mean);
      peak = std::max(peak, terms[i]);
    }
    if (peak <= kLogSentinel) {
      total += kLogSentinel;
      continue;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      acc += rule.weights[i] * std::exp(terms[i] - peak);
    }
    total += peak + std::log(acc);
  }
  return total;
}

void require_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be finite and nonnegative");
  }
}

// Fills the Wald interval for phi and its image under sqrt.
void finish_intervals(EBFit& fit) {
  const double z = critical_value_95();
  fit.phi_ci = {std::max(fit.phi - z * fit.phi_se, 0.0),
                std::max(fit.phi + z * fit.phi_se, 0.0)};
  fit.sqrt_phi = std::sqrt(std::max(fit.phi, 0.0));
  fit.sqrt_phi_ci = {std::sqrt(fit.phi_ci.lo), std::sqrt(fit.phi_ci.hi)};
  fit.sqrt_phi_se = fit.phi > 0.0 ? fit.phi_se / (2.0 * fit.sqrt_phi)
                                  : std::numeric_limits<double>::infinity();
  fit.nonpositive_phi = fit.phi <= 0.0;
  if (fit.nonpositive_phi) {
    fit.diagnostics.push_back(
        "phi estimate is not positive: z-values are no more dispersed than "
        "under the null; sqrt_phi reported as 0");
  }
}

void validate_for_fit(const Dataset& dataset, std::size_t min_studies) {
  const std::size_t n = record_count(dataset);
  if (dataset.size() < min_studies) {
    std::ostringstream os;
    os << "need at least " << min_studies << " studies, got " << dataset.size();
    throw ValidationError(os.str());
  }
  if (n < 10) {
    throw ValidationError("need at least 10 records, got " + std::to_string(n));
  }
  for (const StudyGroup& g : dataset) {
    if (g.records.empty()) {
      throw ValidationError("study " + g.study_id + " has no records");
    }
  }
}

}  // namespace

ZRecord make_zrecord(std::string study_id, double p_value) {
  ZRecord r;
  r.study_id = std::move(study_id);
  r.p_value = p_value;
  r.z_abs = std::max(abs_z_from_two_sided_p(p_value), kMinAbsZ);
  r.z_sq = r.z_abs * r.z_abs;
  return r;
}

IngestResult ingest(std::span<const RawRecord> records) {
  IngestResult out;
  std::map<std::string, std::vector<ZRecord>> groups;
  for (const RawRecord& raw : records) {
    const double p = raw.p_value;
    if (!(p > 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "p-value " << p << " outside (0, 1]";
      out.dropped.push_back({raw, kReasonInvalid, os.str()});
      continue;
    }
    if (p <= kCensorPThreshold) {
      out.dropped.push_back(
          {raw, kReasonCensored, "p-values at or below 0.001 are not collected"});
      continue;
    }
    ZRecord z = make_zrecord(raw.study_id, p);
    if (abs_z_from_two_sided_p(p) < kMinAbsZ) {
      std::ostringstream os;
      os << "study " << raw.study_id;
      if (raw.line != 0) os << " line " << raw.line;
      os << ": |z| below " << kMinAbsZ << " raised to " << kMinAbsZ;
      out.warnings.push_back(os.str());
    }
    groups[raw.study_id].push_back(std::move(z));
  }
  out.dataset.reserve(groups.size());
  for (auto& [id, recs] : groups) {
    out.dataset.push_back({id, std::move(recs)});
  }
  return out;
}

std::size_t record_count(const Dataset& dataset) {
  std::size_t n = 0;
  for (const StudyGroup& g : dataset) n += g.records.size();
  return n;
}

double mean_z_sq(const Dataset& dataset) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const StudyGroup& g : dataset) {
    for (const ZRecord& r : g.records) {
      sum += r.z_sq;
      ++n;
    }
  }
  if (n == 0) throw ValidationError("empty dataset");
  return sum / static_cast<double>(n);
}

double study_conditional_loglik(const StudyGroup& group, double phi_j,
                                const FitConfig& cfg) {
  if (group.records.empty()) throw ValidationError("empty study group");
  const double mean = phi_j + 1.0;
  if (!(mean > cfg.epsilon_mean)) return kLogSentinel;
  double total = 0.0;
  for (const ZRecord& r : group.records) {
    total += gamma_log_density(std::max(r.z_sq, kMinAbsZ * kMinAbsZ), kHalf, mean);
  }
  return total;
}

double marginal_loglik(double phi, double sigma, const Dataset& dataset,
                       const FitConfig& cfg) {
  require_sigma(sigma);
  const GaussHermiteRule rule = gauss_hermite_normal(cfg.gh_nodes);
  return marginal_loglik_impl(phi, sigma, summarize(dataset), rule,
                              cfg.epsilon_mean);
}

EBFit fit_mixed(const Dataset& dataset, const FitConfig& cfg) {
  validate_for_fit(dataset, 2);
  if (cfg.gh_nodes < 10) throw ValidationError("gh_nodes must be at least 10");
  if (cfg.fixed_sigma) require_sigma(*cfg.fixed_sigma);

  const std::vector<StudyStats> stats = summarize(dataset);
  const GaussHermiteRule rule = gauss_hermite_normal(cfg.gh_nodes);
  auto loglik = [&](double phi, double sigma) {
    return marginal_loglik_impl(phi, sigma, stats, rule, cfg.epsilon_mean);
  };

  const bool free_sigma = !cfg.fixed_sigma.has_value();
  auto objective = [&](std::span<const double> x) {
    if (!free_sigma) return -loglik(x[0], *cfg.fixed_sigma);
    if (x[1] < cfg.log_sigma_min || x[1] > cfg.log_sigma_max) {
      return std::numeric_limits<double>::infinity();
    }
    return -loglik(x[0], std::exp(x[1]));
  };

  NelderMeadOptions opts;
  opts.f_tol = cfg.f_tol;
  opts.x_tol = cfg.x_tol;
  opts.max_iterations = cfg.max_iterations;
  opts.initial_step = {0.2, 0.5};

  EBFit fit;
  fit.model_kind = ModelKind::mixed;
  fit.gh_nodes = cfg.gh_nodes;
  // Start at the default prior rather than at the pooled moment estimate,
  // which is already the answer when sigma is fixed at 0.
  const double phi0 = 1.0;

  auto start = [&](double log_sigma) {
    return free_sigma ? std::vector<double>{phi0, log_sigma}
                      : std::vector<double>{phi0};
  };
  NelderMeadResult best = nelder_mead_minimize(objective, start(std::log(0.5)), opts);
  fit.iterations += best.iterations;
  fit.evaluations += best.evaluations;
  if (!best.converged) {
    fit.diagnostics.push_back("first simplex run did not converge; restarting");
    NelderMeadResult retry = nelder_mead_minimize(objective, start(std::log(0.1)), opts);
    fit.iterations += retry.iterations;
    fit.evaluations += retry.evaluations;
    if (retry.converged || retry.value < best.value) best = std::move(retry);
  }
  if (best.converged) {
    // Restart from the optimum with a fresh simplex to guard against
    // premature collapse.
    NelderMeadOptions polish = opts;
    polish.initial_step = {0.05, 0.2};
    NelderMeadResult again = nelder_mead_minimize(objective, best.x, polish);
    fit.iterations += again.iterations;
    fit.evaluations += again.evaluations;
    if (again.value < best.value) best = std::move(again);
  }

  fit.converged = best.converged;
  fit.phi = best.x[0];
  fit.sigma = free_sigma ? std::exp(best.x[1]) : *cfg.fixed_sigma;
  fit.log_likelihood = -best.value;
  fit.n_records = record_count(dataset);
  fit.n_studies = dataset.size();
  if (!fit.converged) {
    std::ostringstream os;
    os << "optimizer stopped after " << fit.iterations
       << " iterations without meeting f_tol=" << cfg.f_tol;
    fit.diagnostics.push_back(os.str());
  }
  if (free_sigma && fit.sigma < 1e-4) {
    fit.diagnostics.push_back("sigma estimate is effectively 0; log sigma is not identified");
  }

  // Observed information from central differences of the log-likelihood.
  const double h_phi = 1e-4 * std::max(1.0, std::abs(fit.phi));
  const double f0 = fit.log_likelihood;
  const double d2_phi =
      (loglik(fit.phi + h_phi, fit.sigma) - 2.0 * f0 + loglik(fit.phi - h_phi, fit.sigma)) /
      (h_phi * h_phi);
  double info_phi = -d2_phi;
  double info_ls = 0.0;
  double info_cross = 0.0;
  if (free_sigma) {
    const double h_ls = 1e-3;
    const double ls = best.x[1];
    auto ll = [&](double phi, double log_sigma) { return loglik(phi, std::exp(log_sigma)); };
    info_ls = -(ll(fit.phi, ls + h_ls) - 2.0 * f0 + ll(fit.phi, ls - h_ls)) / (h_ls * h_ls);
    info_cross = -(ll(fit.phi + h_phi, ls + h_ls) - ll(fit.phi + h_phi, ls - h_ls) -
                   ll(fit.phi - h_phi, ls + h_ls) + ll(fit.phi - h_phi, ls - h_ls)) /
                 (4.0 * h_phi * h_ls);
  }
  const double det = info_phi * info_ls - info_cross * info_cross;
  if (free_sigma && info_phi > 0.0 && info_ls > 0.0 && det > 0.0) {
    fit.vcov = {{{info_ls / det, -info_cross / det}, {-info_cross / det, info_phi / det}}};
  } else if (info_phi > 0.0) {
    fit.vcov = {{{1.0 / info_phi, 0.0}, {0.0, 0.0}}};
    if (free_sigma) {
      fit.diagnostics.push_back(
          "information for log sigma is not positive; phi standard error "
          "computed with sigma held fixed");
    }
  } else {
    fit.vcov = {{{std::numeric_limits<double>::infinity(), 0.0}, {0.0, 0.0}}};
    fit.converged = false;
    fit.diagnostics.push_back("observed information for phi is not positive");
  }
  fit.phi_se = std::sqrt(fit.vcov[0][0]);
  finish_intervals(fit);
  return fit;
}

EBFit fit_marginal(const Dataset& dataset) {
  validate_for_fit(dataset, 1);
  EBFit fit;
  fit.model_kind = ModelKind::marginal;
  fit.n_records = record_count(dataset);
  fit.n_studies = dataset.size();
  const double mean = mean_z_sq(dataset);
  const double n = static_cast<double>(fit.n_records);

  // Pooled score for the Gamma mean is proportional to z^2 - mean; the
  // bread and meat of the sandwich reduce to a clustered variance of the
  // sample mean (CR0, no small-sample factor).
  double meat = 0.0;
  double log_lik = 0.0;
  for (const StudyGroup& g : dataset) {
    double cluster = 0.0;
    for (const ZRecord& r : g.records) {
      cluster += r.z_sq - mean;
      log_lik += gamma_log_density(r.z_sq, kHalf, mean);
    }
    meat += cluster * cluster;
  }
  const double var = meat / (n * n);

  fit.phi = mean - 1.0;
  fit.sigma = 0.0;
  fit.phi_se = std::sqrt(var);
  fit.vcov = {{{var, 0.0}, {0.0, 0.0}}};
  fit.log_likelihood = log_lik;
  fit.converged = true;
  fit.gh_nodes = 0;
  if (fit.n_studies == 1) {
    fit.diagnostics.push_back(
        "single study: clustered variance is degenerate (zero)");
  }
  finish_intervals(fit);
  return fit;
}

Dataset simulate_dataset(double phi, double sigma, std::size_t n_studies,
                         std::size_t records_per_study, std::uint64_t seed,
                         const SimulateOptions& options) {
  if (n_studies == 0 || records_per_study == 0) {
    throw DomainError("simulate_dataset: counts must be at least 1");
  }
  if (!std::isfinite(phi)) throw DomainError("simulate_dataset: phi must be finite");
  require_sigma(sigma);
  constexpr double floor_mean = 1e-6;
  if (sigma == 0.0 && !(phi + 1.0 > floor_mean)) {
    throw DomainError("simulate_dataset: phi + 1 must be positive when sigma = 0");
  }

  Rng rng(seed, stream_id("simulate_dataset"));
  Dataset out;
  out.reserve(n_studies);
  for (std::size_t j = 0; j < n_studies; ++j) {
    double phi_j = phi;
    if (sigma > 0.0) {
      int attempts = 0;
      do {
        if (++attempts > 100000) {
          throw DomainError("simulate_dataset: rejection sampling of phi_j failed");
        }
        phi_j = rng.normal(phi, sigma);
      } while (!(phi_j + 1.0 > floor_mean));
    }
    const double sd = std::sqrt(phi_j + 1.0);

    std::ostringstream id;
    id << 'S';
    id.width(4);
    id.fill('0');
    id << (j + 1);
    StudyGroup group{id.str(), {}};
    for (std::size_t i = 0; i < records_per_study; ++i) {
      const double z = sd * rng.normal();
      ZRecord r;
      r.study_id = group.study_id;
      r.p_value = two_sided_p(z);
      r.z_abs = std::max(std::abs(z), kMinAbsZ);
      r.z_sq = r.z_abs * r.z_abs;
      if (options.drop_censored && r.p_value <= kCensorPThreshold) continue;
      group.records.push_back(std::move(r));
    }
    if (!group.records.empty()) out.push_back(std::move(group));
  }
  return out;
}

std::vector<RawRecord> to_raw_records(const Dataset& dataset) {
  std::vector<RawRecord> rows;
  rows.reserve(record_count(dataset));
  for (const StudyGroup& g : dataset) {
    for (const ZRecord& r : g.records) rows.push_back({r.study_id, r.p_value, 0});
  }
  return rows;
}

}  // namespace defprior
