#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "condmon/cli/commands.hpp"
#include "condmon/cli/spec.hpp"

using condmon::cli::run_cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSpecs = fs::path(CONDMON_TEST_DATA) / "specs";
const fs::path kGolden = fs::path(CONDMON_TEST_DATA) / "golden";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "condmon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name, const std::string& content) {
  const auto p = fs::path(::testing::TempDir()) / name;
  std::ofstream(p) << content;
  return p;
}

std::string spec(const char* name) { return (kSpecs / name).string(); }

}  // namespace

TEST(Cli, ValidateAcceptsAndRejects) {
  EXPECT_EQ(run({"validate", spec("diagonal_ideal.json")}).code, 0);
  const auto bad = run({"validate", scratch("bad.json", R"({"s":2,"generators":[[1,1],[2,2]]})").string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("(2,2)"), std::string::npos);
  EXPECT_EQ(run({"validate", scratch("mal.json", R"({"s":2,)").string()}).code, 3);
  EXPECT_EQ(run({"validate", "/nonexistent/spec.json"}).code, 3);
}

TEST(Cli, SchemaViolations) {
  EXPECT_EQ(run({"validate", scratch("k.json", R"({"s":2,"generators":[[1,1]],"colour":1})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("d.json", R"({"s":2,"generators":[[1,1,1]]})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("t.json", R"({"s":"two","generators":[[1,1]]})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("n.json", R"({"generators":[[1,-1]],"s":2})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("g.json", R"x({"group":"C3","support":["(1,1)"]})x").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("u.json", R"({"nothing":true})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("b.json", R"({"s":1,"generators":[[1]],"budget":{"speed":1}})").string()}).code, 2);
  EXPECT_EQ(run({"validate", scratch("a.json", "[1,2]").string()}).code, 2);
}

TEST(Cli, InvariantsOfTheDiagonalIdeal) {
  const auto r = run({"invariants", spec("diagonal_ideal.json"), "(3,3)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out).at("reports").at(0);
  EXPECT_EQ(report.at("Z_count"), 2);
  EXPECT_EQ(report.at("L"), json::array({2, 3}));
  EXPECT_EQ(report.at("c"), 3);
  EXPECT_EQ(report.at("c_eq"), 0);
  EXPECT_EQ(report.at("c_adj"), 3);
  EXPECT_EQ(report.at("c_mon"), 3);
}

TEST(Cli, InvariantsOfTheIdentity) {
  const auto r = run({"invariants", spec("diagonal_ideal.json"), "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out).at("reports").at(0);
  EXPECT_EQ(report.at("Z_count"), 1);
  EXPECT_EQ(report.at("L"), json::array({0}));
  for (const char* key : {"c", "c_eq", "c_adj", "c_mon"}) EXPECT_EQ(report.at(key), 0) << key;
}

TEST(Cli, InvariantsOverZeroSumSequences) {
  const auto r = run({"invariants", spec("c2_iota.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out).at("reports").at(0);
  EXPECT_EQ(report.at("Z_count"), 2);
  EXPECT_EQ(report.at("L"), json::array({2, 3}));
  EXPECT_EQ(report.at("c"), 3);
}

TEST(Cli, InvariantsErrors) {
  EXPECT_EQ(run({"invariants", spec("diagonal_ideal.json"), "(2,0)"}).code, 2);
  EXPECT_EQ(run({"invariants", spec("diagonal_ideal.json"), "(2,"}).code, 2);
  EXPECT_EQ(run({"invariants", spec("c3_primes.json"), "r"}).code, 2);
  const auto budget = run({"--factorization-cap", "1", "invariants", spec("diagonal_ideal.json"), "(3,3)"});
  EXPECT_EQ(budget.code, 4);
  const auto partial = json::parse(budget.out);
  EXPECT_EQ(partial.at("error").at("kind"), "BudgetExceeded");
  EXPECT_TRUE(partial.contains("input_digest"));
}

TEST(Cli, BudgetScaleFromEnvironment) {
  ::setenv("CONDMON_BUDGET_SCALE", "0.00001", 1);
  const auto tight = run({"invariants", spec("cycle3.json")});
  ::setenv("CONDMON_BUDGET_SCALE", "nonsense", 1);
  const auto bad = run({"invariants", spec("cycle3.json")});
  ::unsetenv("CONDMON_BUDGET_SCALE");
  EXPECT_EQ(tight.code, 4);
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(run({"invariants", spec("cycle3.json")}).code, 0);
}

TEST(Cli, GoldenFiles) {
  const std::vector<std::pair<std::vector<std::string>, const char*>> cases{
      {{"invariants", spec("diagonal_ideal.json")}, "invariants_diagonal_ideal.json"},
      {{"invariants", spec("c2_iota.json")}, "invariants_c2_iota.json"},
      {{"survey", spec("diagonal_ideal.json"), "--window", "3,3", "--format", "csv"}, "survey_diagonal_ideal.csv"},
      {{"survey", spec("diagonal_ideal.json"), "--window", "3,3"}, "survey_diagonal_ideal.json"},
      {{"construct", "cycle", "--m", "3"}, "construct_cycle3.json"},
      {{"davenport", "C2xC2", "--cross-check"}, "davenport_c2xc2.json"},
  };
  for (const auto& [args, golden] : cases) {
    const auto first = run(args);
    const auto second = run(args);
    ASSERT_EQ(first.code, 0) << golden << ": " << first.err;
    EXPECT_EQ(first.out, second.out) << golden;
    EXPECT_EQ(first.out, slurp(kGolden / golden)) << golden;
  }
}

TEST(Cli, SurveyWindow) {
  const auto r = run({"survey", spec("diagonal_ideal.json"), "--window", "5,5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  // 25 vectors with both coordinates positive, plus the identity.
  EXPECT_EQ(doc.at("rows").size(), 26U);
  EXPECT_LE(doc.at("summary").at("max_c").get<int>(), 3);
  EXPECT_EQ(doc.at("summary").at("non_interval"), 0);
}

TEST(Cli, SurveyEmptyWindowIsHeaderOnly) {
  const auto r = run({"survey", spec("diagonal_ideal.json"), "--window", "", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "element,Z_count,L,c,c_eq,c_adj,c_mon,flags,error\n");
}

TEST(Cli, SurveyCycleHasTheEqualCatenaryRow) {
  const auto r = run({"survey", spec("cycle3.json"), "--window", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  bool found = false;
  for (const auto& row : doc.at("rows")) found = found || row.at("c_eq").get<int>() >= 3;
  EXPECT_TRUE(found);
}

TEST(Cli, SurveyRecordsBudgetErrorsPerRow) {
  const auto r = run({"--factorization-cap", "2", "survey", spec("diagonal_ideal.json"), "--window", "4,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_GT(doc.at("summary").at("errors").get<int>(), 0);
  EXPECT_EQ(doc.at("rows").size(), 17U);
}

TEST(Cli, SurveyWindowTooLarge) {
  EXPECT_EQ(run({"--enumeration-cap", "10", "survey", spec("diagonal_ideal.json"), "--window", "9,9"}).code, 4);
  EXPECT_EQ(run({"survey", spec("diagonal_ideal.json"), "--window", "1,2,3"}).code, 2);
}

TEST(Cli, Construct) {
  const auto r = run({"construct", "interval_sequence", "--group", "C5", "--k", "2", "--l", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto path = scratch("interval.json", r.out);
  const auto inv = run({"invariants", path.string()});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_EQ(json::parse(inv.out).at("reports").at(0).at("L"), json::array({2, 3, 4, 5}));

  const auto params = run({"construct", "deep-hole", "--params", R"({"s": 2, "alpha": 1})"});
  ASSERT_EQ(params.code, 0) << params.err;
  EXPECT_EQ(json::parse(params.out).at("generators"), json::array({json::array({1, 1})}));

  const auto pp = run({"construct", "power_primary", "--alphas", "1", "--unit-group", "C2"});
  ASSERT_EQ(pp.code, 0) << pp.err;
  EXPECT_EQ(json::parse(pp.out).at("unit_group"), "C2");

  EXPECT_EQ(run({"construct", "interval_sequence", "--group", "C2", "--k", "2", "--l", "5"}).code, 2);
  EXPECT_EQ(run({"construct", "equal_catenary", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"construct", "nothing"}).code, 2);
  EXPECT_EQ(run({"construct", "cycle", "--params", "{"}).code, 2);
}

TEST(Cli, ConstructionSpecsLoadDirectly) {
  const auto r = run({"invariants", spec("cycle3.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out).at("reports").at(0);
  EXPECT_GE(report.at("c_eq").get<int>(), 3);
}

TEST(Cli, UnitDecoratedElements) {
  const auto r = run({"invariants", spec("units.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("reports").at(1).at("Z_count"), 2);
  EXPECT_EQ(doc.at("reports").at(1).at("c"), 2);
}

TEST(Cli, Davenport) {
  const auto r = run({"davenport", "C8"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("davenport"), 8);
  const auto s = run({"davenport", "C3", "--support", "1"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(json::parse(s.out).at("davenport"), 3);
  EXPECT_EQ(run({"davenport", "Z5"}).code, 2);
}

TEST(Cli, VerifySuites) {
  const auto thm = run({"verify", "thm5.1", "--window", "6,6", "--families", "default"});
  EXPECT_EQ(thm.code, 0) << thm.err;
  const auto cor = run({"verify", "cor5.3", "--m", "3..5"});
  EXPECT_EQ(cor.code, 0) << cor.err;
  EXPECT_EQ(json::parse(cor.out).at("results").size(), 2U);
  const auto gap = run({"verify", "thm3.8", "--negative"});
  ASSERT_EQ(gap.code, 0) << gap.err;
  const auto result = json::parse(gap.out).at("results").at(0);
  EXPECT_GT(result.at("assertions").get<int>(), 0);
  ASSERT_FALSE(result.at("notes").empty());
  EXPECT_NE(result.at("notes").at(0).get<std::string>().find("diagonal"), std::string::npos);
}

TEST(Cli, VerifyOutputIsDeterministic) {
  const auto a = run({"verify", "lemma3.4"});
  const auto b = run({"verify", "atom-heredity"});
  ASSERT_EQ(a.code, 0);
  auto ja = json::parse(a.out);
  auto jb = json::parse(b.out);
  ja.erase("suite");
  jb.erase("suite");
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(a.out, run({"verify", "lemma3.4"}).out);
  EXPECT_FALSE(ja.at("results").at(0).contains("seconds"));
}

TEST(Cli, VerifyErrors) {
  EXPECT_EQ(run({"verify", "thm9.9"}).code, 2);
  EXPECT_EQ(run({"verify", "thm5.1", "--families", "exotic"}).code, 2);
  EXPECT_EQ(run({"verify", "cor5.3", "--m", "5..3"}).code, 2);
  EXPECT_EQ(run({"--factorization-cap", "1", "verify", "cor5.3.2"}).code, 4);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"survey", spec("diagonal_ideal.json"), "--format", "xml"}).code, 2);
}

TEST(Cli, DigestIgnoresKeyOrder) {
  const auto a = scratch("o1.json", R"({"s":2,"generators":[[1,1]]})");
  const auto b = scratch("o2.json", R"({"generators":[[1,1]],"kind":"ideal_extension","s":2})");
  const auto ra = json::parse(run({"validate", a.string()}).out);
  const auto rb = json::parse(run({"validate", b.string()}).out);
  EXPECT_EQ(ra.at("input_digest"), rb.at("input_digest"));
  EXPECT_EQ(condmon::cli::fnv1a_hex(""), "cbf29ce484222325");
}
