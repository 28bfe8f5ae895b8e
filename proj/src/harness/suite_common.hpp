#pragma once

// Shared plumbing for the verification suites: case recording with
// tolerance lookup, timing and error capture.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/error.hpp"
#include "dunkl/harness.hpp"
#include "json.hpp"

namespace dunkl::suites {

using Params = nlohmann::ordered_json;

/// The outcome of one measured quantity before it becomes a record.
struct Measured {
  double value = std::numeric_limits<double>::quiet_NaN();
  double reference = std::numeric_limits<double>::quiet_NaN();
};

class Recorder {
 public:
  Recorder(const SuiteConfig& config, std::string suite, std::vector<CaseRecord>& out)
      : config_(config), suite_(std::move(suite)), out_(out) {}

  const SuiteConfig& config() const { return config_; }

  /// Resolution factor n_default/n when the user asked for a coarser grid.
  void set_resolution(int default_n, int n) {
    degrade_ = n < default_n ? static_cast<double>(default_n) / n : 1.0;
  }
  bool degraded() const { return degrade_ > 1.0; }

  /// Tolerance of a group: config override, else the default widened by
  /// the square of the resolution factor on coarse grids.
  double tolerance(const std::string& group, double fallback) const {
    const auto it = config_.tolerances.find(group);
    if (it != config_.tolerances.end()) return it->second;
    return fallback * degrade_ * degrade_;
  }

  /// Runs `fn`, times it and records the result judged by `check`.
  void record(const std::string& group, const std::string& case_id, double lambda, double p, const Params& params,
              const std::string& check, double default_tol, const std::function<Measured()>& fn) {
    CaseRecord r;
    r.suite = suite_;
    r.group = group;
    r.case_id = case_id;
    r.lambda = lambda;
    r.p = p;
    r.param_json = params.is_null() ? "{}" : params.dump();
    r.check = check;
    r.tol = tolerance(group, default_tol);
    r.degraded = degraded() && config_.tolerances.find(group) == config_.tolerances.end();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Measured m = fn();
      r.value = m.value;
      r.reference = m.reference;
      judge(r);
    } catch (const Error& e) {
      r.error = e.what();
      r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(r));
  }

  /// Records a failure for a shared computation that several cases needed.
  void record_error(const std::string& group, const std::string& case_id, double lambda, double p,
                    const std::string& message) {
    CaseRecord r;
    r.suite = suite_;
    r.group = group;
    r.case_id = case_id;
    r.lambda = lambda;
    r.p = p;
    r.error = message;
    r.pass = false;
    out_.push_back(std::move(r));
  }

 private:
  static void judge(CaseRecord& r) {
    if (std::isfinite(r.value) && std::isfinite(r.reference)) {
      r.abs_err = std::fabs(r.value - r.reference);
      if (r.reference != 0.0) r.rel_err = r.abs_err / std::fabs(r.reference);
    }
    if (r.check == "abs")
      r.pass = r.abs_err <= r.tol;
    else if (r.check == "rel")
      r.pass = r.rel_err <= r.tol;
    else if (r.check == "le")
      r.pass = std::isfinite(r.value) && r.value <= r.reference + r.tol;
    else if (r.check == "ge")
      r.pass = std::isfinite(r.value) && r.value >= r.reference - r.tol;
    else if (r.check == "finite")
      r.pass = std::isfinite(r.value);
    else
      r.pass = false;
  }

  const SuiteConfig& config_;
  std::string suite_;
  std::vector<CaseRecord>& out_;
  double degrade_ = 1.0;
};

/// Short stable label for a real, used inside case ids.
inline std::string label(double v) {
  return nlohmann::json(v).dump();
}

/// λ list of the config, or the suite's default.
inline std::vector<double> lambdas_or(const SuiteConfig& c, std::vector<double> fallback) {
  return c.lambdas.empty() ? fallback : c.lambdas;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void run_plancherel(Recorder& rec);
void run_inversion(Recorder& rec);
void run_translation(Recorder& rec);
void run_poisson(Recorder& rec);
void run_cauchy_riemann(Recorder& rec);
void run_hilbert_routes(Recorder& rec);
void run_estimate_a(Recorder& rec);
void run_atoms(Recorder& rec);
void run_hilbert_atoms(Recorder& rec);

}  // namespace dunkl::suites
