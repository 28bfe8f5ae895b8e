#include <chrono>
#include <functional>
#include <map>

#include "dunkl/harness.hpp"
#include "suite_common.hpp"

namespace dunkl {

SuiteReport run_suite(const SuiteConfig& config) {
  validate(config);
  static const std::map<std::string, std::function<void(suites::Recorder&)>> table{
      {"plancherel", suites::run_plancherel},
      {"inversion", suites::run_inversion},
      {"translation", suites::run_translation},
      {"poisson", suites::run_poisson},
      {"cauchy_riemann", suites::run_cauchy_riemann},
      {"hilbert_routes", suites::run_hilbert_routes},
      {"estimate_a", suites::run_estimate_a},
      {"atoms", suites::run_atoms},
      {"hilbert_atoms", suites::run_hilbert_atoms},
  };
  SuiteReport report;
  report.config = config;
  for (const std::string& name : suite_names()) {
    if (config.suite != "all" && config.suite != name) continue;
    suites::Recorder rec(report.config, name, report.cases);
    const auto t0 = std::chrono::steady_clock::now();
    table.at(name)(rec);
    report.suite_seconds.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return report;
}

}  // namespace dunkl
