#pragma once

// Command implementations behind the `defprior` executable. Each command
// builds one report object and renders it either as text or as JSON, so both
// outputs always agree.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defprior/posterior.hpp"
#include "defprior/verification.hpp"

namespace defprior::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitDataError = 1,
  kExitUsage = 2,
  kExitNotConverged = 3,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// analyze ------------------------------------------------------------------

struct AnalyzeOptions {
  std::optional<double> b;
  std::optional<double> se;
  std::optional<double> p;
  double tau = 1.0;
  double level = 0.95;
  bool json = false;
};

struct AnalysisReport {
  double b = 0.0;
  double se = 0.0;
  std::optional<double> p_input;
  std::string se_source;  // "given" or "implied"
  double tau = 1.0;
  double level = 0.95;
  PosteriorSummary flat;
  PosteriorSummary shrunk;  // zero-mean normal prior with ratio tau
  double flat_abs_posterior_mean = 0.0;
  ConflictCheck conflict;
  std::vector<std::string> warnings;
};

/// Throws UsageError for missing or conflicting flags and DomainError for
/// invalid values.
AnalysisReport analyze(const AnalyzeOptions& options);
nlohmann::json to_json(const AnalysisReport& report);
void print_text(std::ostream& out, const AnalysisReport& report);
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

// coverage-curve -------------------------------------------------------------

struct CoverageCurveOptions {
  std::size_t points = 100;
  std::string out;  // empty or "-" writes to the output stream
  bool json = false;
};

/// Log-spaced grid from 0.001 to 1 inclusive.
std::vector<double> log_spaced_p_grid(std::size_t points);
int cmd_coverage_curve(const CoverageCurveOptions& options, std::ostream& out,
                       std::ostream& err);

// jeffreys-curve -------------------------------------------------------------

struct JeffreysCurveOptions {
  std::vector<double> se;  // empty means {0.5, 1, 2}
  std::optional<double> theta_max;  // default 6 * max(se)
  std::size_t points = 201;
  std::string out;
  bool json = false;
};

int cmd_jeffreys_curve(const JeffreysCurveOptions& options, std::ostream& out,
                       std::ostream& err);

// fit ------------------------------------------------------------------------

struct FitOptions {
  std::string input;
  std::string model = "mixed";
  std::size_t gh_nodes = 40;
  bool seedless = false;
  std::string out;  // JSON destination; empty prints JSON only with --json
  bool json = false;
};

int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err);

// simulate -------------------------------------------------------------------

struct SimulateCommandOptions {
  double phi = 1.6384;
  double sigma = 0.5;
  std::size_t studies = 50;
  std::size_t per_study = 12;
  std::uint64_t seed = kDefaultSeed;
  bool drop_censored = false;
  std::string out;
  bool json = false;
};

int cmd_simulate(const SimulateCommandOptions& options, std::ostream& out,
                 std::ostream& err);

// verify ---------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 100000;
  std::size_t eb_replications = 20;
  bool json = false;
};

/// Writes one JSON object per check (JSON lines); exits 0 iff all pass.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace defprior::cli
