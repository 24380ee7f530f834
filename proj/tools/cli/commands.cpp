#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "defprior/empirical_bayes.hpp"
#include "defprior/errors.hpp"
#include "defprior/flat_prior.hpp"
#include "defprior/ingest_csv.hpp"
#include "defprior/jeffreys.hpp"
#include "defprior/serialize.hpp"
#include "defprior/stats_kernel.hpp"

namespace defprior::cli {

namespace {

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Runs `write` against the named file, or against `fallback` for "" / "-".
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

// Maps exceptions to the documented exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (" << e.diagnostics() << ")\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

void print_summary_row(std::ostream& out, const std::string& label,
                       const PosteriorSummary& s) {
  out << std::left << std::setw(22) << label << std::right
      << std::setw(11) << fmt(s.post_mean) << std::setw(11) << fmt(s.post_sd)
      << std::setw(13) << fmt(s.sign_prob_positive) << "   ["
      << fmt(s.credible_interval.lo) << ", " << fmt(s.credible_interval.hi) << "]"
      << std::setw(12) << fmt(s.conditional_coverage_95) << '\n';
}

}  // namespace

// analyze ------------------------------------------------------------------

AnalysisReport analyze(const AnalyzeOptions& options) {
  if (!options.b) throw UsageError("--b is required");
  if (options.se.has_value() == options.p.has_value()) {
    throw UsageError("give exactly one of --se or --p");
  }
  AnalysisReport r;
  r.b = *options.b;
  r.tau = options.tau;
  r.level = options.level;
  if (options.se) {
    r.se = *options.se;
    r.se_source = "given";
  } else {
    r.p_input = options.p;
    r.se = implied_se(r.b, *options.p);
    r.se_source = "implied";
  }
  const Estimate est(r.b, r.se);
  const PriorSpec prior = PriorSpec::normal(options.tau);
  r.flat = posterior(est, PriorSpec::flat(), options.level);
  r.shrunk = posterior(est, prior, options.level);
  r.flat_abs_posterior_mean = flat_abs_posterior_mean(est);
  r.conflict = prior_data_conflict(est);
  if (r.conflict.flag) {
    std::ostringstream os;
    os << "prior-data conflict: two-sided p = " << fmt(r.shrunk.two_sided_p)
       << " < 0.001 (|z| > 3.29), an event of probability about "
       << fmt(100.0 * two_sided_p(3.29 / kSqrt2), 2)
       << "% under the default prior; the default prior should not be used "
          "for this estimate";
    r.warnings.push_back(os.str());
  }
  if (r.se_source == "implied") {
    r.warnings.push_back("standard error implied from |b| and the two-sided p-value");
  }
  return r;
}

nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json input = {{"b", r.b}, {"se", r.se}, {"se_source", r.se_source},
                          {"tau", r.tau}, {"level", r.level}};
  if (r.p_input) input["p"] = *r.p_input;
  return {
      {"input", input},
      {"flat_prior", to_json(r.flat)},
      {"default_prior", to_json(r.shrunk)},
      {"flat_abs_posterior_mean", r.flat_abs_posterior_mean},
      {"conflict",
       {{"flag", r.conflict.flag},
        {"marginal_tail_prob", r.conflict.marginal_tail_prob},
        {"p_threshold", kConflictPThreshold}}},
      {"warnings", r.warnings},
  };
}

void print_text(std::ostream& out, const AnalysisReport& r) {
  out << "estimate b = " << fmt(r.b) << ", se = " << fmt(r.se) << " ("
      << r.se_source;
  if (r.p_input) out << " from p = " << fmt(*r.p_input);
  out << "), z = " << fmt(r.b / r.se) << ", two-sided p = "
      << fmt(r.shrunk.two_sided_p) << "\n\n";
  out << std::left << std::setw(22) << "prior" << std::right << std::setw(11)
      << "mean" << std::setw(11) << "sd" << std::setw(13) << "P(beta>0)"
      << "   " << fmt(100.0 * r.level, 4) << "% credible interval"
      << "   coverage of b +/- z95 se\n";
  print_summary_row(out, "flat", r.flat);
  std::ostringstream label;
  label << "N(0, (" << fmt(r.tau, 4) << " se)^2)";
  print_summary_row(out, label.str(), r.shrunk);
  out << "\nflat-prior E(|beta| | b) = " << fmt(r.flat_abs_posterior_mean)
      << "  (|b| = " << fmt(std::abs(r.b)) << ")\n";
  out << "marginal P(|B| >= |b|) under the default prior = "
      << fmt(r.conflict.marginal_tail_prob) << '\n';
  for (const std::string& w : r.warnings) out << "WARNING: " << w << '\n';
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AnalysisReport report = analyze(options);
    if (options.json) {
      out << to_json(report).dump(2) << '\n';
    } else {
      print_text(out, report);
    }
    return kExitOk;
  });
}

// coverage-curve -------------------------------------------------------------

std::vector<double> log_spaced_p_grid(std::size_t points) {
  if (points < 2) throw UsageError("--points must be at least 2");
  std::vector<double> grid(points);
  const double lo = std::log10(0.001);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = std::pow(10.0, lo * (1.0 - t));
  }
  grid.front() = 0.001;
  grid.back() = 1.0;
  return grid;
}

int cmd_coverage_curve(const CoverageCurveOptions& options, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<double> grid = log_spaced_p_grid(options.points);
    const CoverageCurve curve = coverage_curve(grid);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      if (curve.points[i].coverage < curve.points[i - 1].coverage) {
        throw NumericalError("coverage curve is not monotone in p",
                             "at p=" + fmt(curve.points[i].p_value));
      }
    }
    with_output(options.out, out, [&](std::ostream& os) {
      if (options.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const CoveragePoint& pt : curve.points) {
          rows.push_back({{"p_value", pt.p_value}, {"z_abs", pt.z_abs},
                          {"coverage", pt.coverage}});
        }
        os << nlohmann::json{{"points", rows}}.dump(2) << '\n';
        return;
      }
      os << "p_value,coverage\n";
      for (const CoveragePoint& pt : curve.points) {
        os << csv_number(pt.p_value) << ',' << csv_number(pt.coverage) << '\n';
      }
    });
    return kExitOk;
  });
}

// jeffreys-curve -------------------------------------------------------------

int cmd_jeffreys_curve(const JeffreysCurveOptions& options, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    std::vector<double> ses = options.se;
    if (ses.empty()) ses = {0.5, 1.0, 2.0};
    for (double s : ses) {
      if (!(s > 0.0)) throw UsageError("--se values must be positive");
    }
    if (options.points < 2) throw UsageError("--points must be at least 2");
    const double theta_max =
        options.theta_max.value_or(6.0 * *std::max_element(ses.begin(), ses.end()));
    std::vector<JeffreysCurve> curves;
    for (double s : ses) curves.push_back(jeffreys_curve(s, theta_max, options.points));

    with_output(options.out, out, [&](std::ostream& os) {
      if (options.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const JeffreysCurve& c : curves) {
          arr.push_back({{"se", c.se}, {"theta", c.theta}, {"density", c.density}});
        }
        os << nlohmann::json{{"curves", arr}}.dump(2) << '\n';
        return;
      }
      os << "se,theta,density\n";
      for (const JeffreysCurve& c : curves) {
        for (std::size_t i = 0; i < c.theta.size(); ++i) {
          os << csv_number(c.se) << ',' << csv_number(c.theta[i]) << ','
             << csv_number(c.density[i]) << '\n';
        }
      }
    });
    return kExitOk;
  });
}

// fit ------------------------------------------------------------------------

int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.input.empty()) throw UsageError("--input is required");
    if (options.model != "mixed" && options.model != "marginal") {
      throw UsageError("--model must be 'mixed' or 'marginal'");
    }
    std::ifstream in(options.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + options.input + "'");
    const CsvReadResult csv = read_records_csv(in);
    if (!csv.ok()) {
      for (const CsvParseError& e : csv.errors) {
        err << options.input << ":" << e.line << ": " << e.message << '\n';
      }
      return static_cast<int>(kExitDataError);
    }
    const IngestResult data = ingest(csv.records);
    for (const std::string& w : data.warnings) err << "warning: " << w << '\n';

    EBFit fit;
    if (options.model == "mixed") {
      FitConfig cfg;
      cfg.gh_nodes = options.gh_nodes;
      fit = fit_mixed(data.dataset, cfg);
    } else {
      fit = fit_marginal(data.dataset);
    }

    nlohmann::json doc = {
        {"input", options.input},
        {"fit", to_json(fit)},
        {"dropped", dropped_report(data.dropped)},
        {"warnings", data.warnings},
        {"censoring_protocol_p_threshold", kCensorPThreshold},
    };
    if (!options.out.empty()) {
      with_output(options.out, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    }
    if (options.json) {
      if (options.out.empty()) out << doc.dump(2) << '\n';
    } else {
      std::map<std::string, std::size_t> by_reason;
      for (const DroppedRecord& d : data.dropped) ++by_reason[d.reason];
      out << "model: " << to_string(fit.model_kind);
      if (fit.model_kind == ModelKind::mixed) out << " (gh_nodes=" << fit.gh_nodes << ")";
      out << "\nrecords used: " << fit.n_records << " in " << fit.n_studies
          << " studies; dropped: " << data.dropped.size();
      for (const auto& [reason, count] : by_reason) {
        out << " [" << reason << ": " << count << "]";
      }
      out << "\nphi = " << fmt(fit.phi) << " (se " << fmt(fit.phi_se)
          << "), sigma = " << fmt(fit.sigma) << '\n';
      out << "sqrt(phi) = " << fmt(fit.sqrt_phi, 4) << "  95% CI ["
          << fmt(fit.sqrt_phi_ci.lo, 4) << ", " << fmt(fit.sqrt_phi_ci.hi, 4)
          << "]\n";
      out << "log-likelihood = " << fmt(fit.log_likelihood, 10)
          << ", converged = " << (fit.converged ? "yes" : "no") << '\n';
      for (const std::string& d : fit.diagnostics) out << "note: " << d << '\n';
    }
    return static_cast<int>(fit.converged ? kExitOk : kExitNotConverged);
  });
}

// simulate -------------------------------------------------------------------

int cmd_simulate(const SimulateCommandOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    if (options.studies == 0 || options.per_study == 0) {
      throw UsageError("--studies and --per-study must be at least 1");
    }
    SimulateOptions sim;
    sim.drop_censored = options.drop_censored;
    const Dataset data = simulate_dataset(options.phi, options.sigma, options.studies,
                                          options.per_study, options.seed, sim);
    const std::vector<RawRecord> rows = to_raw_records(data);
    with_output(options.out, out, [&](std::ostream& os) { write_records_csv(os, rows); });
    if (options.json) {
      nlohmann::json meta = {{"phi", options.phi},     {"sigma", options.sigma},
                             {"studies", options.studies},
                             {"per_study", options.per_study},
                             {"seed", options.seed},   {"records", rows.size()},
                             {"out", options.out}};
      err << meta.dump() << '\n';
    }
    return kExitOk;
  });
}

// verify ---------------------------------------------------------------------

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunOptions run;
    run.seed = options.seed;
    run.n = options.n;
    run.eb_replications = options.eb_replications;
    const std::vector<SimulationReport> reports = run_all(run);
    std::size_t failed = 0;
    for (const SimulationReport& r : reports) {
      out << to_json(r).dump() << '\n';
      if (r.status == CheckStatus::failed) ++failed;
    }
    if (!options.json) {
      err << reports.size() << " checks, " << failed << " failed (seed "
          << options.seed << ", n " << options.n << ")\n";
    }
    return static_cast<int>(all_passed(reports) ? kExitOk : kExitDataError);
  });
}

}  // namespace defprior::cli
