#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dunkl/error.hpp"
#include "dunkl/harness.hpp"

using namespace dunkl;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::SuiteFailure;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("dunkl_harness_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Config, ParsesKeyValueText) {
  const SuiteConfig c = parse_config_text(
      "# comment\n\nsuite = poisson\nlambda=0.5, 1\np=0.9\ngrid_n=512\ndomain=20\ny_levels=32\nseed=11\n"
      "tol.semigroup=1e-4\n");
  EXPECT_EQ(c.suite, "poisson");
  EXPECT_EQ(c.lambdas, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.ps, std::vector<double>{0.9});
  EXPECT_EQ(c.grid_n, 512);
  EXPECT_EQ(c.domain, 20.0);
  EXPECT_EQ(c.y_levels, 32);
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.tolerances.at("semigroup"), 1e-4);
}

TEST(Config, LaterSettingsOverrideEarlierOnes) {
  // The CLI applies its options on top of the file with apply_setting.
  SuiteConfig c = parse_config_text("suite=poisson\nlambda=0.5\n");
  apply_setting(c, "lambda", "2,3");
  EXPECT_EQ(c.suite, "poisson");
  EXPECT_EQ(c.lambdas, (std::vector<double>{2.0, 3.0}));
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_EQ(code_of([] { parse_config_text("colour=blue\n"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_config_text("lambda\n"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_real_list("0.5,abc"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_real_list(""); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { load_config_file("/nonexistent/dunkl.cfg"); }), ErrorCode::IoFailure);
}

TEST(Config, ValidationNamesTheBound) {
  SuiteConfig c;
  c.suite = "atoms";
  c.lambdas = {0.5};
  c.ps = {0.5};
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("0.8"), std::string::npos) << msg;
  }
  c.ps = {0.9};
  EXPECT_NO_THROW(validate(c));
  c.suite = "nonsense";
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::InvalidConfig);
  c.suite = "poisson";
  c.lambdas = {-1.0};
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::InvalidConfig);
}

TEST(Report, EmptyReportCsvIsHeaderOnly) {
  SuiteReport r;
  EXPECT_EQ(report_csv(r), "suite,case_id,lambda,p,param_json,value,reference,abs_err,rel_err,tol,pass\n");
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_TRUE(j.at("cases").empty());
}

TEST(Report, RecordCountsAndDeterminism) {
  SuiteConfig c;
  c.suite = "estimate_a";
  const SuiteReport a = run_suite(c);
  const SuiteReport b = run_suite(c);
  ASSERT_FALSE(a.cases.empty());
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_EQ(report_csv(a), report_csv(b));

  const auto j = nlohmann::json::parse(report_json(a));
  EXPECT_EQ(j.at("cases").size(), a.cases.size());
  const std::string csv = report_csv(a);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), a.cases.size() + 1);
  EXPECT_EQ(j.at("summary").at("failures").get<std::size_t>(), a.failures());
}

TEST(Report, FailedCaseIsRecordedNotThrown) {
  SuiteConfig c;
  c.suite = "estimate_a";
  c.lambdas = {2.0, 4.0};
  const SuiteReport r = run_suite(c);
  EXPECT_GE(r.failures(), 1u);
  bool found = false;
  for (const CaseRecord& rec : r.cases)
    if (rec.group == "monotone" && !rec.pass) found = true;
  EXPECT_TRUE(found);
}

TEST(Report, AtomicWrite) {
  const fs::path d = scratch("atomic");
  const fs::path f = d / "out.json";
  write_atomic(f.string(), "first");
  write_atomic(f.string(), "second");
  EXPECT_EQ(slurp(f), "second");
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++n;
  EXPECT_EQ(n, 1u);  // no temporary left behind
  EXPECT_EQ(code_of([&] { write_atomic((d / "missing" / "x.json").string(), "x"); }), ErrorCode::IoFailure);
  fs::remove_all(d);
}

TEST(Report, EmitWritesEveryConfiguredFile) {
  const fs::path d = scratch("emit");
  SuiteConfig c;
  c.suite = "estimate_a";
  c.lambdas = {0.5};
  c.out = (d / "r.json").string();
  c.csv = (d / "r.csv").string();
  c.timing = (d / "t.json").string();
  const SuiteReport r = run_suite(c);
  emit_report(r);
  EXPECT_EQ(slurp(c.out), report_json(r));
  EXPECT_EQ(slurp(c.csv), report_csv(r));
  const auto t = nlohmann::json::parse(slurp(c.timing));
  EXPECT_TRUE(t.contains("total_seconds"));
  fs::remove_all(d);
}

TEST(Suites, NamesAreKnown) {
  const auto& n = suite_names();
  for (const char* s : {"plancherel", "inversion", "translation", "poisson", "cauchy_riemann", "hilbert_routes",
                        "estimate_a", "atoms", "hilbert_atoms"})
    EXPECT_NE(std::find(n.begin(), n.end(), s), n.end()) << s;
}
