#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/cli.hpp"
#include "fixtures.hpp"

namespace ddl::cli {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult ddl(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("ddl_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

TEST(Check, Fixture) {
  const CliResult r = ddl({"check", fixture_path("example1.ddl")});
  EXPECT_EQ(r.status, kSuccess);
  EXPECT_NE(r.out.find("5 facts, 6 rules, 2 superiority pairs"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Check, GrammarViolationHasLineNumber) {
  TempDir dir;
  const CliResult r = ddl({"check", dir.write("bad.ddl", "fact a.\nx: a @ b -> c.\n")});
  EXPECT_EQ(r.status, kDomainFailure);
  EXPECT_NE(r.err.find("bad.ddl:2:"), std::string::npos) << r.err;
}

TEST(Check, WarningsStillSucceed) {
  TempDir dir;
  const CliResult r = ddl({"check", dir.write("w.ddl", "fact a.\nfact ~a.\nr: => b.\ns: => c.\nr > s.\n")});
  EXPECT_EQ(r.status, kSuccess);
  EXPECT_NE(r.err.find("contradictory-facts"), std::string::npos);
  EXPECT_NE(r.err.find("inert-superiority"), std::string::npos);
}

TEST(Check, MissingFile) { EXPECT_EQ(ddl({"check", "/nonexistent/x.ddl"}).status, kUsageOrIo); }

TEST(Derive, Example1Json) {
  const CliResult r = ddl({"derive", fixture_path("example1.ddl"), "--format", "json"});
  ASSERT_EQ(r.status, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& c = doc.at("plus_defeasible").at("C");
  EXPECT_NE(std::find(c.begin(), c.end(), "l"), c.end());
  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(r.out);
  for (const auto& [k, v] : ordered.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"plus_definite", "minus_definite", "plus_defeasible", "minus_defeasible",
                                            "undetermined", "justifications"}));
}

TEST(Derive, ArraysAreSortedLexicographically) {
  const CliResult r = ddl({"derive", fixture_path("homicide.ddl"), "-s", fixture_path("scenarios/homicide/mario.case"),
                     "--format", "json"});
  ASSERT_EQ(r.status, kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  auto check_sorted = [](const nlohmann::json& arr) {
    std::vector<std::string> v = arr.get<std::vector<std::string>>();
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  };
  check_sorted(doc["plus_definite"]);
  check_sorted(doc["minus_definite"]);
  check_sorted(doc["undetermined"]);
  for (const char* m : {"C", "O", "P"}) {
    check_sorted(doc["plus_defeasible"][m]);
    check_sorted(doc["minus_defeasible"][m]);
  }
  const auto& o = doc["plus_defeasible"]["O"];
  EXPECT_NE(std::find(o.begin(), o.end(), "life_imprisonment"), o.end());
  EXPECT_FALSE(doc["justifications"].empty());
}

TEST(Derive, EmptyTheory) {
  TempDir dir;
  const CliResult r = ddl({"derive", dir.write("empty.ddl", ""), "--format", "json"});
  ASSERT_EQ(r.status, kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["plus_definite"].empty());
  EXPECT_TRUE(doc["minus_definite"].empty());
  EXPECT_TRUE(doc["undetermined"].empty());
  EXPECT_TRUE(doc["justifications"].empty());
  for (const char* m : {"C", "O", "P"}) {
    EXPECT_TRUE(doc["plus_defeasible"][m].empty());
    EXPECT_TRUE(doc["minus_defeasible"][m].empty());
  }
}

TEST(Derive, OutputFileAndStability) {
  TempDir dir;
  const std::string target = dir.path() + "/ext.json";
  ASSERT_EQ(ddl({"derive", fixture_path("uturn.ddl"), "--format", "json", "--output", target}).status, kSuccess);
  std::ifstream in(target);
  std::stringstream saved;
  saved << in.rdbuf();
  EXPECT_EQ(saved.str(), ddl({"derive", fixture_path("uturn.ddl"), "--format", "json"}).out);
}

TEST(Derive, Failures) {
  TempDir dir;
  EXPECT_EQ(ddl({"derive", fixture_path("sale.ddl"), "-s", "/nonexistent.case"}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"derive", fixture_path("sale.ddl"), "-s", dir.write("x.case", "r: a =>O b.")}).status,
            kDomainFailure);
  EXPECT_EQ(ddl({"derive", fixture_path("sale.ddl"), "--format", "xml"}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"derive", dir.write("d.ddl", "r: a => b.\nr > s.\n")}).status, kDomainFailure);
}

TEST(Test, FixtureSuitesPass) {
  for (const char* name : {"homicide", "sale"}) {
    const CliResult r = ddl({"test", fixture_path(std::string(name) + ".ddl"), fixture_path(std::string("scenarios/") + name),
                       "--format", "json"});
    EXPECT_EQ(r.status, kSuccess) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["error_rate"].get<double>(), 0.0);
  }
}

TEST(Test, OneWrongExpectation) {
  TempDir dir;
  const std::string cases = dir.path() + "/cases";
  fs::create_directories(cases);
  std::ofstream(cases + "/a.case") << "fact sale.\nexpect +defeasible C contract.\n";
  std::ofstream(cases + "/b.case") << "fact sale.\nexpect -defeasible C contract.\n";
  std::ofstream(cases + "/c.case") << "expect -defeasible C sale.\n";
  std::ofstream(cases + "/notes.txt") << "ignored\n";
  const std::string report = dir.path() + "/report.json";
  const CliResult r = ddl({"test", fixture_path("sale.ddl"), cases, "--report", report, "--format", "json"});
  EXPECT_EQ(r.status, kDomainFailure);
  std::ifstream in(report);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_DOUBLE_EQ(doc["error_rate"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(doc["scenarios"][1]["name"], "b");
  EXPECT_EQ(doc["scenarios"][1]["verdict"], "review");
}

TEST(Test, LengthRatio) {
  const CliResult r = ddl({"test", fixture_path("sale.ddl"), fixture_path("scenarios/sale"), "--source-chars", "50",
                     "--format", "json"});
  ASSERT_EQ(r.status, kSuccess);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["length_ratio"].is_number());
}

TEST(Test, EmptyOrMissingDirectory) {
  TempDir dir;
  EXPECT_EQ(ddl({"test", fixture_path("sale.ddl"), dir.path()}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"test", fixture_path("sale.ddl"), dir.path() + "/nope"}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"test", "/nonexistent.ddl", fixture_path("scenarios/sale")}).status, kUsageOrIo);
}

TEST(Estimate, StagedRounding) {
  const CliResult r = ddl({"estimate", "--chars", "435939", "--paper-rounding", "--format", "json"});
  ASSERT_EQ(r.status, kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["code_hours"].get<double>(), 485);
  EXPECT_EQ(doc["retrieve_hours"].get<double>(), 485);
  EXPECT_EQ(doc["scenario_hours"].get<double>(), 1455);
  EXPECT_EQ(doc["test_hours"].get<double>(), 388);
  EXPECT_EQ(doc["total_hours"].get<double>(), 2813);
  EXPECT_EQ(doc["person_months_rounded"].get<int>(), 23);

  const CliResult text = ddl({"estimate", "--chars", "435939", "--paper-rounding"});
  EXPECT_NE(text.out.find("2813 h"), std::string::npos) << text.out;
}

TEST(Estimate, OnePage) {
  const CliResult r = ddl({"estimate", "--chars", "1800", "--rate", "3.99"});
  ASSERT_EQ(r.status, kSuccess);
  EXPECT_NE(r.out.find("1.995 h"), std::string::npos) << r.out;
}

TEST(Estimate, Zero) {
  const auto doc = nlohmann::json::parse(ddl({"estimate", "--chars", "0", "--format", "json"}).out);
  EXPECT_EQ(doc["total_hours"].get<double>(), 0.0);
}

TEST(Estimate, InvalidValues) {
  EXPECT_EQ(ddl({"estimate", "--chars", "abc"}).status, kDomainFailure);
  EXPECT_EQ(ddl({"estimate", "--chars", "-3"}).status, kDomainFailure);
  EXPECT_EQ(ddl({"estimate", "--chars", "10", "--rate", "-1"}).status, kDomainFailure);
  EXPECT_EQ(ddl({"estimate", "--chars", "10", "--expertise", "2"}).status, kDomainFailure);
  EXPECT_EQ(ddl({"estimate", "--chars", "10", "--depth", "9"}).status, kDomainFailure);
  EXPECT_EQ(ddl({"estimate"}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"estimate", "--chars", "10", "--bogus"}).status, kUsageOrIo);
}

TEST(Stats, FixtureVerbatim) {
  const CliResult r = ddl({"stats", fixture_path("coding_log.csv")});
  ASSERT_EQ(r.status, kSuccess);
  for (const char* line : {"mean 3.99", "median 4.06", "std 0.94", "min 1.80", "max 5.91"}) {
    EXPECT_NE(r.out.find(line), std::string::npos) << line;
  }
  const auto doc = nlohmann::json::parse(ddl({"stats", fixture_path("coding_log.csv"), "--format", "json"}).out);
  EXPECT_EQ(doc["rows"].get<int>(), 98);
  EXPECT_TRUE(doc["correlation_expertise"].is_number());
}

TEST(Stats, Failures) {
  TempDir dir;
  const std::string header = "subject,text,chars,depth,expertise,seconds\n";
  EXPECT_EQ(ddl({"stats", dir.write("one.csv", header + "s,t,100,1,0.5,400\n")}).status, kDomainFailure);
  const CliResult bad = ddl({"stats", dir.write("bad.csv", header + "s,t,100,1,0.5,400\ns,t,many,1,0.5,400\n")});
  EXPECT_EQ(bad.status, kDomainFailure);
  EXPECT_NE(bad.err.find("bad.csv:3:"), std::string::npos) << bad.err;
  EXPECT_EQ(ddl({"stats", dir.path() + "/missing.csv"}).status, kUsageOrIo);
}

TEST(Help, EverySubcommandDocumentsItsFlags) {
  const std::map<std::string, std::vector<std::string>> flags = {
      {"check", {"theory"}},
      {"derive", {"--scenario", "--format", "--output"}},
      {"test", {"dir", "--report", "--format", "--source-chars"}},
      {"estimate",
       {"--chars", "--rate", "--retrieval-factor", "--scenario-multiplier", "--test-fraction", "--paper-rounding",
        "--depth", "--expertise", "--hours-per-month", "--format"}},
      {"stats", {"log", "--format"}},
  };
  for (const auto& [cmd, expected] : flags) {
    const CliResult r = ddl({cmd, "--help"});
    EXPECT_EQ(r.status, kSuccess) << cmd;
    for (const auto& flag : expected) EXPECT_NE(r.out.find(flag), std::string::npos) << cmd << " " << flag;
  }
  EXPECT_EQ(ddl({"--help"}).status, kSuccess);
  EXPECT_EQ(ddl({}).status, kUsageOrIo);
  EXPECT_EQ(ddl({"frobnicate"}).status, kUsageOrIo);
}

}  // namespace
}  // namespace ddl::cli
