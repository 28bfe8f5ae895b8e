#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::InvalidConfig, key + " = '" + value + "': " + why);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) bad(key, text, "not a finite real");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) bad(key, text, "not an integer");
  return v;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"plancherel",     "inversion",      "translation",
                                              "poisson",        "cauchy_riemann", "hilbert_routes",
                                              "estimate_a",     "atoms",          "hilbert_atoms"};
  return names;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real("list", item));
  if (out.empty()) bad("list", text, "empty list");
  return out;
}

void apply_setting(SuiteConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), value = trim(raw_value);
  if (key == "suite") {
    const auto& n = suite_names();
    if (value != "all" && std::find(n.begin(), n.end(), value) == n.end()) bad(key, value, "unknown suite");
    c.suite = value;
  } else if (key == "lambda") {
    c.lambdas = parse_real_list(value);
  } else if (key == "p") {
    c.ps = parse_real_list(value);
  } else if (key == "grid_n" || key == "grid-n") {
    const long long n = parse_integer(key, value);
    if (n > 1 << 20) bad(key, value, "too large");
    c.grid_n = static_cast<int>(n);
  } else if (key == "domain") {
    c.domain = parse_real(key, value);
  } else if (key == "y_levels" || key == "y-levels") {
    const long long n = parse_integer(key, value);
    if (n > 1 << 16) bad(key, value, "too large");
    c.y_levels = static_cast<int>(n);
  } else if (key == "seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) bad(key, value, "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "csv") {
    c.csv = value;
  } else if (key == "timing") {
    c.timing = value;
  } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    const double t = parse_real(key, value);
    if (!(t > 0.0)) bad(key, value, "tolerance must be positive");
    c.tolerances[key.substr(4)] = t;
  } else {
    bad(key, value, "unknown setting");
  }
}

SuiteConfig parse_config_text(const std::string& text, SuiteConfig base) {
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(number) + ": expected key=value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

SuiteConfig load_config_file(const std::string& path, SuiteConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

void validate(const SuiteConfig& c) {
  const auto& n = suite_names();
  if (c.suite != "all" && std::find(n.begin(), n.end(), c.suite) == n.end())
    throw Error(ErrorCode::InvalidConfig, "unknown suite '" + c.suite + "'");
  for (double l : c.lambdas)
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidConfig, "lambda must be positive, got " + std::to_string(l));
  if (c.grid_n && *c.grid_n < 64)
    throw Error(ErrorCode::InvalidConfig, "grid_n must be at least 64, got " + std::to_string(*c.grid_n));
  if (c.domain && !(*c.domain > 0.0)) throw Error(ErrorCode::InvalidConfig, "domain must be positive");
  if (c.y_levels && *c.y_levels < 2) throw Error(ErrorCode::InvalidConfig, "y_levels must be at least 2");
  if (c.out.empty()) throw Error(ErrorCode::InvalidConfig, "output path is empty");
  for (double p : c.ps)
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidConfig, "p must lie in (0, 1], got " + std::to_string(p));

  const bool atoms = c.suite == "all" || c.suite == "atoms" || c.suite == "hilbert_atoms";
  if (atoms && !c.ps.empty()) {
    const std::vector<double> lambdas = c.lambdas.empty() ? std::vector<double>{0.5, 1.0} : c.lambdas;
    for (double l : lambdas) {
      const DunklParameter param = make_parameter(l);
      for (double p : c.ps) {
        if (!(p > param.p_critical && p <= 1.0)) {
          std::ostringstream os;
          os << "p = " << p << " outside the atom range ((4λ+2)/(4λ+3), 1] = (" << param.p_critical
             << ", 1] for λ = " << l;
          throw Error(ErrorCode::InvalidConfig, os.str());
        }
      }
    }
  }
}

}  // namespace dunkl
