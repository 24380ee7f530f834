#include "defprior/serialize.hpp"

#include <cmath>
#include <map>

namespace defprior {

namespace {

// JSON has no infinities; non-finite values are emitted as null.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string to_string(ModelKind kind) {
  return kind == ModelKind::mixed ? "mixed" : "marginal";
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::failed: return "failed";
    case CheckStatus::skipped: return "skipped";
  }
  return "failed";
}

std::string to_string(PassWhen when) {
  switch (when) {
    case PassWhen::below: return "<";
    case PassWhen::at_most: return "<=";
    case PassWhen::at_least: return ">=";
  }
  return "<";
}

nlohmann::json to_json(const Interval& interval) {
  return nlohmann::json::array({number(interval.lo), number(interval.hi)});
}

nlohmann::json to_json(const PosteriorSummary& s) {
  return {
      {"post_mean", number(s.post_mean)},
      {"post_sd", number(s.post_sd)},
      {"sign_prob_positive", number(s.sign_prob_positive)},
      {"credible_interval", to_json(s.credible_interval)},
      {"level", s.level},
      {"conditional_coverage_95", number(s.conditional_coverage_95)},
      {"conflict", s.conflict},
      {"two_sided_p", number(s.two_sided_p)},
  };
}

nlohmann::json to_json(const EBFit& fit) {
  nlohmann::json vcov = nlohmann::json::array();
  for (const auto& row : fit.vcov) {
    vcov.push_back(nlohmann::json::array({number(row[0]), number(row[1])}));
  }
  return {
      {"model_kind", to_string(fit.model_kind)},
      {"phi", number(fit.phi)},
      {"sigma", number(fit.sigma)},
      {"phi_se", number(fit.phi_se)},
      {"phi_ci", to_json(fit.phi_ci)},
      {"sqrt_phi", number(fit.sqrt_phi)},
      {"sqrt_phi_se", number(fit.sqrt_phi_se)},
      {"sqrt_phi_ci", to_json(fit.sqrt_phi_ci)},
      {"ci_level", 0.95},
      {"ci_method", fit.ci_method},
      {"log_likelihood", number(fit.log_likelihood)},
      {"converged", fit.converged},
      {"nonpositive_phi", fit.nonpositive_phi},
      {"n_records", fit.n_records},
      {"n_studies", fit.n_studies},
      {"vcov_parameters", {"phi", "log_sigma"}},
      {"vcov", vcov},
      {"iterations", fit.iterations},
      {"evaluations", fit.evaluations},
      {"gh_nodes", fit.gh_nodes},
      {"censoring_corrected", fit.censoring_corrected},
      {"diagnostics", fit.diagnostics},
  };
}

nlohmann::json to_json(const DroppedRecord& d) {
  nlohmann::json j = {
      {"study_id", d.record.study_id},
      {"p_value", number(d.record.p_value)},
      {"reason", d.reason},
      {"detail", d.detail},
  };
  if (d.record.line != 0) j["line"] = d.record.line;
  return j;
}

nlohmann::json dropped_report(std::span<const DroppedRecord> dropped) {
  std::map<std::string, std::size_t> counts;
  nlohmann::json rows = nlohmann::json::array();
  for (const DroppedRecord& d : dropped) {
    ++counts[d.reason];
    rows.push_back(to_json(d));
  }
  return {{"count", dropped.size()}, {"by_reason", counts}, {"records", rows}};
}

nlohmann::json to_json(const SimulationReport& r) {
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [key, value] : r.details) details[key] = number(value);
  return {
      {"name", r.name},
      {"status", to_string(r.status)},
      {"passed", r.passed},
      {"n_draws", r.n_draws},
      {"statistic", number(r.statistic)},
      {"threshold", number(r.threshold)},
      {"pass_when", to_string(r.pass_when)},
      {"seed", r.seed},
      {"details", details},
  };
}

}  // namespace defprior
