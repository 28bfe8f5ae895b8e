#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <string>
#include <vector>

namespace dunkl {

/// Verification suites known to run_suite; "all" runs every other one in
/// this order.
const std::vector<std::string>& suite_names();

/// What to run and at which resolution. Empty lists and unset options select
/// the suite's own defaults (documented in the README).
struct SuiteConfig {
  std::string suite = "all";
  std::vector<double> lambdas;
  std::vector<double> ps;
  std::optional<int> grid_n;
  std::optional<double> domain;
  std::optional<int> y_levels;
  std::uint64_t seed = 7;
  std::map<std::string, double> tolerances;  ///< overrides keyed by case group
  std::string out = "report.json";
  std::string csv;     ///< optional CSV table path
  std::string timing;  ///< optional wall-clock sidecar path
};

/// Applies one key=value setting (the same keys as the config file).
/// Throws InvalidConfig for unknown keys or malformed values.
void apply_setting(SuiteConfig& config, const std::string& key, const std::string& value);

/// Parses a flat key=value file: one setting per line, '#' starts a
/// comment, blank lines are ignored. Throws IoFailure or InvalidConfig.
SuiteConfig load_config_file(const std::string& path, SuiteConfig base = {});
SuiteConfig parse_config_text(const std::string& text, SuiteConfig base = {});

/// Comma-separated reals; throws InvalidConfig on anything else.
std::vector<double> parse_real_list(const std::string& text);

/// Throws InvalidConfig naming the offending setting. The atom suites
/// require every p in ((4λ+2)/(4λ+3), 1] for every λ.
void validate(const SuiteConfig& config);

/// One verified quantity. `check` says how pass was decided:
///   "abs"    abs_err ≤ tol
///   "rel"    rel_err ≤ tol
///   "le"     value ≤ reference + tol
///   "ge"     value ≥ reference - tol
///   "finite" value is finite
struct CaseRecord {
  std::string suite;
  std::string group;
  std::string case_id;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::quiet_NaN();
  std::string param_json = "{}";  ///< compact JSON object
  double value = std::numeric_limits<double>::quiet_NaN();
  double reference = std::numeric_limits<double>::quiet_NaN();
  double abs_err = std::numeric_limits<double>::quiet_NaN();
  double rel_err = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
  std::string check = "abs";
  bool pass = false;
  bool degraded = false;  ///< tolerance widened for a grid below the suite default
  std::string error;      ///< library error that aborted the case, if any
  double seconds = 0.0;   ///< wall clock; reported only in the timing sidecar
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CaseRecord> cases;
  /// Wall-clock of each suite that ran, including setup shared by its
  /// cases; written to the timing sidecar only.
  std::vector<std::pair<std::string, double>> suite_seconds;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

/// Validates, then runs the named suite(s). Cases that raise a library
/// error are recorded as failures with the message; they never abort the run.
SuiteReport run_suite(const SuiteConfig& config);

/// Byte-stable serializations. The JSON holds the effective configuration,
/// build metadata and every record; the CSV has the columns
/// suite,case_id,lambda,p,param_json,value,reference,abs_err,rel_err,tol,pass.
std::string report_json(const SuiteReport& report);
std::string report_csv(const SuiteReport& report);
/// Per-case wall clock and host details, kept apart so the report itself is
/// reproducible byte for byte.
std::string timing_json(const SuiteReport& report);

/// Writes through a temporary file in the target directory and renames it
/// into place. Throws IoFailure.
void write_atomic(const std::string& path, const std::string& content);

/// Writes the JSON report and, when configured, the CSV and timing files.
void emit_report(const SuiteReport& report);

}  // namespace dunkl
