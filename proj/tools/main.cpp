// defprior: default N(0, se^2) prior analysis from the command line.
//
//   defprior analyze --b 3 --se 1
//   defprior analyze --b 1.96 --p 0.05 --json
//   defprior coverage-curve --points 200 --out coverage.csv
//   defprior jeffreys-curve --se 0.5 --se 1 --se 2 --out jeffreys.csv
//   defprior simulate --phi 1.6384 --sigma 0.5 --seed 7 --out sim.csv
//   defprior fit --input sim.csv --model mixed --out fit.json
//   defprior verify --seed 1 --n 100000

#include <CLI11.hpp>
#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace defprior::cli;

  CLI::App app{"Default-prior inference for regression coefficients"};
  app.require_subcommand(1);

  AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Posterior summaries for one estimate");
  analyze->add_option("--b", analyze_opts.b, "Coefficient estimate");
  auto* se_opt = analyze->add_option("--se", analyze_opts.se, "Standard error");
  auto* p_opt = analyze->add_option("--p", analyze_opts.p,
                                    "Two-sided p-value (implies se = |b|/|z|)");
  se_opt->excludes(p_opt);
  analyze->add_option("--tau", analyze_opts.tau, "Prior sd as a multiple of se")
      ->capture_default_str();
  analyze->add_option("--level", analyze_opts.level, "Credible level")
      ->capture_default_str();
  analyze->add_flag("--json", analyze_opts.json, "Machine-readable output");

  CoverageCurveOptions coverage_opts;
  auto* coverage = app.add_subcommand(
      "coverage-curve", "Conditional coverage of the 95% interval versus p-value (CSV)");
  coverage->add_option("--points", coverage_opts.points, "Grid size on [0.001, 1]")
      ->capture_default_str();
  coverage->add_option("--out", coverage_opts.out, "Output file (default stdout)");
  coverage->add_flag("--json", coverage_opts.json, "Emit JSON instead of CSV");

  JeffreysCurveOptions jeffreys_opts;
  auto* jeffreys = app.add_subcommand(
      "jeffreys-curve", "Jeffreys prior for |beta| under the sign/magnitude split (CSV)");
  jeffreys->add_option("--se", jeffreys_opts.se, "Standard error (repeatable)");
  jeffreys->add_option("--theta-max", jeffreys_opts.theta_max,
                       "Grid end (default 6 * max se)");
  jeffreys->add_option("--points", jeffreys_opts.points, "Grid points per curve")
      ->capture_default_str();
  jeffreys->add_option("--out", jeffreys_opts.out, "Output file (default stdout)");
  jeffreys->add_flag("--json", jeffreys_opts.json, "Emit JSON instead of CSV");

  FitOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Empirical-Bayes fit to study_id,p_value CSV");
  fit->add_option("--input", fit_opts.input, "Input CSV")->required();
  fit->add_option("--model", fit_opts.model, "mixed or marginal")
      ->check(CLI::IsMember({"mixed", "marginal"}))
      ->capture_default_str();
  fit->add_option("--gh-nodes", fit_opts.gh_nodes, "Gauss-Hermite nodes")
      ->check(CLI::Range(10, 400))
      ->capture_default_str();
  fit->add_flag("--seedless", fit_opts.seedless,
                "Accepted for scripting symmetry; fitting uses no randomness");
  fit->add_option("--out", fit_opts.out, "Write the fit JSON here");
  fit->add_flag("--json", fit_opts.json, "Print the fit JSON to stdout");

  SimulateCommandOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Simulate a study_id,p_value CSV");
  simulate->add_option("--phi", sim_opts.phi)->capture_default_str();
  simulate->add_option("--sigma", sim_opts.sigma)->capture_default_str();
  simulate->add_option("--studies", sim_opts.studies)->capture_default_str();
  simulate->add_option("--per-study", sim_opts.per_study)->capture_default_str();
  simulate->add_option("--seed", sim_opts.seed)->capture_default_str();
  simulate->add_flag("--drop-censored", sim_opts.drop_censored,
                     "Omit records with p <= 0.001");
  simulate->add_option("--out", sim_opts.out, "Output file (default stdout)");
  simulate->add_flag("--json", sim_opts.json, "Print run metadata as JSON to stderr");

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the Monte-Carlo verification suite");
  verify->add_option("--seed", verify_opts.seed)->capture_default_str();
  verify->add_option("--n", verify_opts.n, "Draws per simulation check")
      ->capture_default_str();
  verify->add_option("--eb-replications", verify_opts.eb_replications,
                     "Empirical-Bayes recovery fits (0 skips those checks)")
      ->capture_default_str();
  verify->add_flag("--json", verify_opts.json, "Suppress the stderr summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*analyze) return cmd_analyze(analyze_opts, std::cout, std::cerr);
  if (*coverage) return cmd_coverage_curve(coverage_opts, std::cout, std::cerr);
  if (*jeffreys) return cmd_jeffreys_curve(jeffreys_opts, std::cout, std::cerr);
  if (*fit) return cmd_fit(fit_opts, std::cout, std::cerr);
  if (*simulate) return cmd_simulate(sim_opts, std::cout, std::cerr);
  if (*verify) return cmd_verify(verify_opts, std::cout, std::cerr);
  return kExitUsage;
}
