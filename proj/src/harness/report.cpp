#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "dunkl/error.hpp"
#include "dunkl/harness.hpp"
#include "json.hpp"

namespace dunkl {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

// The same shortest round-trip text the JSON uses; empty for NaN/inf.
std::string csv_number(double v) { return std::isfinite(v) ? ojson(v).dump() : std::string(); }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ojson config_json(const SuiteConfig& c) {
  ojson j;
  j["suite"] = c.suite;
  j["lambda"] = c.lambdas;
  j["p"] = c.ps;
  j["grid_n"] = c.grid_n ? ojson(*c.grid_n) : ojson(nullptr);
  j["domain"] = c.domain ? ojson(*c.domain) : ojson(nullptr);
  j["y_levels"] = c.y_levels ? ojson(*c.y_levels) : ojson(nullptr);
  j["seed"] = c.seed;
  ojson tol = ojson::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  return j;
}

}  // namespace

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.pass ? 0 : 1;
  return n;
}

std::string report_json(const SuiteReport& r) {
  ojson j;
  j["format"] = "dunkl-verify-report/1";
  j["config"] = config_json(r.config);
  ojson env;
  env["library_version"] = "1.0.0";
#ifdef __VERSION__
  env["compiler"] = __VERSION__;
#endif
  env["cxx_standard"] = static_cast<long>(__cplusplus);
#ifdef NDEBUG
  env["assertions"] = false;
#else
  env["assertions"] = true;
#endif
  j["environment"] = env;
  ojson summary;
  summary["cases"] = r.cases.size();
  summary["failures"] = r.failures();
  summary["pass"] = r.all_pass();
  j["summary"] = summary;
  ojson cases = ojson::array();
  for (const auto& c : r.cases) {
    ojson k;
    k["suite"] = c.suite;
    k["group"] = c.group;
    k["case_id"] = c.case_id;
    k["lambda"] = number(c.lambda);
    k["p"] = number(c.p);
    k["params"] = ojson::parse(c.param_json);
    k["value"] = number(c.value);
    k["reference"] = number(c.reference);
    k["abs_err"] = number(c.abs_err);
    k["rel_err"] = number(c.rel_err);
    k["tol"] = number(c.tol);
    k["check"] = c.check;
    k["pass"] = c.pass;
    k["degraded"] = c.degraded;
    if (!c.error.empty()) k["error"] = c.error;
    cases.push_back(std::move(k));
  }
  j["cases"] = std::move(cases);
  return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite,case_id,lambda,p,param_json,value,reference,abs_err,rel_err,tol,pass\n";
  for (const auto& c : r.cases) {
    os << csv_quote(c.suite) << ',' << csv_quote(c.case_id) << ',' << csv_number(c.lambda) << ',' << csv_number(c.p)
       << ',' << csv_quote(c.param_json) << ',' << csv_number(c.value) << ',' << csv_number(c.reference) << ','
       << csv_number(c.abs_err) << ',' << csv_number(c.rel_err) << ',' << csv_number(c.tol) << ','
       << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string timing_json(const SuiteReport& r) {
  ojson j;
  j["hardware_threads"] = std::thread::hardware_concurrency();
  double total = 0.0;
  ojson suites = ojson::object();
  for (const auto& [name, seconds] : r.suite_seconds) {
    suites[name] = seconds;
    total += seconds;
  }
  ojson cases = ojson::array();
  for (const auto& c : r.cases) {
    ojson k;
    k["suite"] = c.suite;
    k["case_id"] = c.case_id;
    k["seconds"] = c.seconds;
    cases.push_back(std::move(k));
  }
  j["total_seconds"] = total;
  j["suites"] = std::move(suites);
  j["cases"] = std::move(cases);
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoFailure, "directory does not exist: " + dir.string());
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoFailure, "write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorCode::IoFailure, "cannot rename onto " + path + ": " + ec.message());
  }
}

void emit_report(const SuiteReport& report) {
  write_atomic(report.config.out, report_json(report));
  if (!report.config.csv.empty()) write_atomic(report.config.csv, report_csv(report));
  if (!report.config.timing.empty()) write_atomic(report.config.timing, timing_json(report));
}

}  // namespace dunkl
