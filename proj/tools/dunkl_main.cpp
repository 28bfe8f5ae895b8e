#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dunkl/error.hpp"
#include "dunkl/harness.hpp"

namespace {

// Exit codes: 0 all cases pass, 1 some case failed, 2 bad configuration,
// 3 I/O failure, 4 any other library error.
int run_verify(const dunkl::SuiteConfig& config) {
  const dunkl::SuiteReport report = dunkl::run_suite(config);
  dunkl::emit_report(report);
  for (const auto& c : report.cases) {
    if (c.pass) continue;
    std::cerr << "FAIL " << c.suite << ' ' << c.case_id;
    if (!c.error.empty())
      std::cerr << " error: " << c.error;
    else
      std::cerr << " value=" << c.value << " reference=" << c.reference << " tol=" << c.tol << " (" << c.check << ')';
    std::cerr << '\n';
  }
  std::cout << config.suite << ": " << report.cases.size() << " cases, " << report.failures() << " failed; report "
            << config.out << '\n';
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification harness for the one-dimensional Dunkl transform toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  std::string config_path;
  verify->add_option("--config", config_path, "Flat key=value file; command-line options override it");

  // Every setting is read as text and parsed by the same routine as the
  // config file, so both paths accept exactly the same values.
  struct Opt {
    const char* flag;
    const char* key;
    const char* help;
    std::string value;
    CLI::Option* option = nullptr;
  };
  std::vector<Opt> opts{
      {"--suite", "suite", "plancherel, inversion, translation, poisson, cauchy_riemann, hilbert_routes, estimate_a, "
                           "atoms, hilbert_atoms or all", {}},
      {"--lambda", "lambda", "Comma-separated λ values", {}},
      {"--p", "p", "Comma-separated p values for the atom suites", {}},
      {"--grid-n", "grid_n", "Nodes of the space grid (at least 64)", {}},
      {"--domain", "domain", "Truncation X of the space grid", {}},
      {"--y-levels", "y_levels", "Number of y levels of half-plane lattices", {}},
      {"--seed", "seed", "Seed for randomized cases", {}},
      {"--out", "out", "JSON report path", {}},
      {"--csv", "csv", "Optional CSV table path", {}},
      {"--timing", "timing", "Optional wall-clock sidecar path", {}},
  };
  for (auto& o : opts) o.option = verify->add_option(o.flag, o.value, o.help);
  std::vector<std::string> tolerances;
  verify->add_option("--tol", tolerances, "Tolerance override group=value (repeatable)");

  auto* list = app.add_subcommand("list", "List the available suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; malformed command lines count as
    // invalid configuration.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& name : dunkl::suite_names()) std::cout << name << '\n';
    std::cout << "all\n";
    return 0;
  }

  try {
    dunkl::SuiteConfig config;
    if (!config_path.empty()) config = dunkl::load_config_file(config_path);
    for (const auto& o : opts)
      if (o.option->count() > 0) dunkl::apply_setting(config, o.key, o.value);
    for (const auto& t : tolerances) {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw dunkl::Error(dunkl::ErrorCode::InvalidConfig, "--tol expects group=value, got '" + t + "'");
      dunkl::apply_setting(config, "tol." + t.substr(0, eq), t.substr(eq + 1));
    }
    return run_verify(config);
  } catch (const dunkl::Error& e) {
    std::cerr << "dunkl: " << e.what() << '\n';
    switch (e.code()) {
      case dunkl::ErrorCode::InvalidConfig: return 2;
      case dunkl::ErrorCode::IoFailure: return 3;
      default: return 4;
    }
  }
}
