// Copyright 2026 The gdpc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "gdpc/fixtures.hpp"
#include <nlohmann/json.hpp>

namespace gdpc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Gdpc(std::vector<std::string> args, std::optional<std::string> color = "never") {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err, color);
  return {code, out.str(), err.str()};
}

std::string Fixture(const std::string& name) {
  return std::string(GDPC_FIXTURE_DIR) + "/" + name + ".gdp";
}

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("gdpc_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

TEST(Cli, TextOutputMatchesGoldenAndPrintsStats) {
  const Result r = Gdpc({"compile", Fixture("epc"), "--method", "true-false", "--emit", "text"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, fixture_file("epc.true-false.txt"));
  EXPECT_EQ(r.err, "method=true-false q=1 sum_m=3 n=k1:2 added_vars=18 added_constraints=20\n");
}

TEST(Cli, JsonIsTheDefault) {
  const Result r = Gdpc({"compile", Fixture("simple")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["method"], "true-false");
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--method", "hull-eps", "--eps", "0"}).code,
            kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", "/nonexistent/model.gdp"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--method", "simplex"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--eps", "0.1"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--bigm", "10"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--report-json", "r.json"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--verify", "--grid", "0"}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({}).code, kExitUsageError);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--method", "bigm", "--bigm-row", "k1_t1_c1"}).code,
            kExitUsageError);
}

TEST(Cli, EpsilonErrorNamesTheCode) {
  const Result r = Gdpc({"compile", Fixture("epc"), "--method", "hull-eps", "--eps", "0"});
  EXPECT_NE(r.err.find("E_EPS_NONPOSITIVE"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ModelErrorsExitWithOne) {
  TempDir dir;
  std::ofstream(dir / "bad.gdp") << "var x in [0, 1];\nx = y;\n";
  const Result r = Gdpc({"compile", (dir / "bad.gdp").string()});
  EXPECT_EQ(r.code, kExitModelError);
  EXPECT_NE(r.err.find("E_UNDECLARED"), std::string::npos) << r.err;
}

TEST(Cli, VerifyPassesAndReportsOnStderr) {
  const Result r = Gdpc({"compile", Fixture("nested"), "--verify", "--grid", "10"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("forward: 0 failures, backward: 0 failures"), std::string::npos) << r.err;
}

TEST(Cli, VerifyFailureExitsWithThree) {
  // The Lee-Grossmann perspective of E - 10 >= 0 is not exact at lambda = 0.
  const Result r = Gdpc({"compile", Fixture("epc"), "--method", "hull-eps", "--verify"});
  EXPECT_EQ(r.code, kExitVerifyFailed) << r.err;
}

TEST(Cli, OutputFileAndJsonReport) {
  TempDir dir;
  const Result r = Gdpc({"compile", Fixture("simple"), "-o", (dir / "m.json").string(), "--verify",
                        "--report-json", (dir / "r.json").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(ReadAll(dir / "m.json"), Gdpc({"compile", Fixture("simple")}).out);
  const nlohmann::json report = nlohmann::json::parse(ReadAll(dir / "r.json"));
  EXPECT_EQ(report["equivalent"], true);
}

TEST(Cli, DumpPassStopsEarly) {
  const Result r = Gdpc({"compile", Fixture("sequential"), "--dump-pass", "sequentialize"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("p__d1"), std::string::npos);
  EXPECT_EQ(r.err.find("added_vars"), std::string::npos);
  EXPECT_EQ(Gdpc({"compile", Fixture("epc"), "--dump-pass", "bogus"}).code, kExitUsageError);
}

TEST(Cli, BigMRowOverride) {
  const Result r = Gdpc({"compile", Fixture("epc"), "--method", "bigm", "--emit", "text",
                        "--bigm-row", "k1_t1_c1=25"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("k1_t1_c1: E - 10 >= -25*(1 - lam_1_k1)"), std::string::npos);
}

TEST(Cli, Coloring) {
  TempDir dir;
  std::ofstream(dir / "warn.gdp") << "var x in [0, 1]; var y in [0, 1];\n"
                                     "if x < 0.5 then y = 1; else y = 0; end\n";
  const std::string file = (dir / "warn.gdp").string();
  const Result plain = Gdpc({"compile", file}, "never");
  EXPECT_NE(plain.err.find("warning: D_STRICT_COERCED"), std::string::npos) << plain.err;
  EXPECT_EQ(plain.err.find('\x1b'), std::string::npos);
  const Result colored = Gdpc({"compile", file}, "always");
  EXPECT_NE(colored.err.find("\x1b[33mwarning\x1b[0m"), std::string::npos) << colored.err;
  EXPECT_EQ(Gdpc({"compile", file}, "sometimes").code, kExitUsageError);
  EXPECT_EQ(plain.out, colored.out);
}

TEST(Cli, RunsAreDeterministic) {
  for (const std::string& name : fixture_names()) {
    for (const char* method : {"true-false", "bigm", "hull-eps"}) {
      const Result a = Gdpc({"compile", Fixture(name), "--method", method});
      const Result b = Gdpc({"compile", Fixture(name), "--method", method});
      EXPECT_EQ(a.code, b.code) << name;
      EXPECT_EQ(a.out, b.out) << name << " " << method;
    }
  }
}

TEST(Cli, HelpExitsCleanly) {
  const Result r = Gdpc({"compile", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--method"), std::string::npos);
}

}  // namespace
}  // namespace gdpc::cli
