#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "pctl_bsat/process.hpp"

using namespace pctl;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

std::string solver() {
  const char* env = std::getenv("PCTL_BSAT_SOLVER");
  return env && *env ? env : PCTL_TEST_SOLVER;
}

ProcessResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), PCTL_BSAT_CLI);
  return run_process(args, "", 300s);
}

int code(const ProcessResult& r) { return r.exit_code.value_or(-1); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pctl-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SolveSingleAtom) {
  const auto r = cli({"solve", "--expr", "a", "--max-states", "1", "--out", dir_.string(),
                      "--solver", solver(), "--dot"});
  ASSERT_EQ(code(r), 0) << r.err;
  EXPECT_NE(slurp(dir_ / "model.tra").find("1 1"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "model.lab"), "0=\"init\" 1=\"a\"\n0: 0 1\n");
  EXPECT_TRUE(fs::exists(dir_ / "model.dot"));
  const auto report = nlohmann::json::parse(slurp(dir_ / "report.json"));
  EXPECT_EQ(report["schema"], 1);
  EXPECT_EQ(report["outcome"], "ModelFound");
  EXPECT_EQ(report["verified"], true);
  EXPECT_EQ(report["bounds"].size(), 1u);
  EXPECT_EQ(report["bounds"][0]["verdict"], "sat");
  EXPECT_EQ(report["modelFiles"].size(), 3u);
}

TEST_F(CliTest, SolveUnsatisfiable) {
  const auto r = cli({"solve", "--expr", "P>1/2[X a] & P>1/2[X !a]", "--max-states", "3",
                      "--out", dir_.string(), "--solver", solver()});
  ASSERT_EQ(code(r), 1) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "model.tra"));
  const auto report = nlohmann::json::parse(slurp(dir_ / "report.json"));
  EXPECT_EQ(report["outcome"], "NoModelUpTo");
  ASSERT_EQ(report["bounds"].size(), 3u);
  for (int b = 0; b < 3; ++b) {
    EXPECT_EQ(report["bounds"][b]["b"], b + 1);
    EXPECT_EQ(report["bounds"][b]["verdict"], "unsat");
  }
}

TEST_F(CliTest, SolveInconclusiveExitsTwo) {
  const auto r = cli({"solve", "--expr", "a", "--max-states", "2", "--out", dir_.string(),
                      "--solver", "sh -c 'cat >/dev/null; echo unknown'"});
  EXPECT_EQ(code(r), 2) << r.err;
  const auto report = nlohmann::json::parse(slurp(dir_ / "report.json"));
  EXPECT_EQ(report["outcome"], "Inconclusive");
}

TEST_F(CliTest, SolverFailureExitsThreeWithStderr) {
  const auto r = cli({"solve", "--expr", "a", "--max-states", "1", "--out", dir_.string(),
                      "--solver", "sh -c 'echo kaboom >&2; exit 9'"});
  EXPECT_EQ(code(r), 3);
  EXPECT_NE(r.err.find("kaboom"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckRoundTrip) {
  const std::string f = "a & P>=1[X (!a & P>=1[X a])]";
  std::ofstream(dir_ / "f.pctl") << f << "\n";
  ASSERT_EQ(code(cli({"solve", "--formula", (dir_ / "f.pctl").string(), "--max-states", "3",
                      "--out", dir_.string(), "--solver", solver()})),
            0);
  const auto r = cli({"check", "--formula", (dir_ / "f.pctl").string(), "--tra",
                      (dir_ / "model.tra").string(), "--lab", (dir_ / "model.lab").string()});
  EXPECT_EQ(code(r), 0) << r.err;
  const auto neg = cli({"check", "--expr", "!(" + f + ")", "--tra", (dir_ / "model.tra").string(),
                        "--lab", (dir_ / "model.lab").string()});
  EXPECT_EQ(code(neg), 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(code(cli({})), 3);
  EXPECT_EQ(code(cli({"solve", "--expr", "a"})), 3);
  EXPECT_EQ(code(cli({"solve", "--expr", "a &", "--max-states", "1", "--out", dir_.string()})), 3);
  EXPECT_EQ(code(cli({"solve", "--max-states", "1", "--out", dir_.string()})), 3);
  EXPECT_EQ(code(cli({"bogus"})), 3);
  EXPECT_EQ(code(cli({"check", "--expr", "a", "--tra", "/nonexistent", "--lab", "/nonexistent"})), 3);
  EXPECT_EQ(code(cli({"--help"})), 0);
}

TEST_F(CliTest, EncodePipedToSolverReproducesVerdict) {
  const auto corpus = gen::DeskCorpus(6).generate(20);
  for (const auto& f : corpus) {
    const std::string text = pretty(f);
    const auto solved = cli({"solve", "--expr", text, "--max-states", "2", "--denominator", "2",
                             "--out", dir_.string(), "--solver", solver()});
    ASSERT_LE(code(solved), 2) << solved.err;
    const auto report = nlohmann::json::parse(slurp(dir_ / "report.json"));
    for (const auto& rec : report["bounds"]) {
      const auto script = cli({"encode", "--expr", text, "--states",
                               std::to_string(rec["b"].get<int>()), "--denominator", "2"});
      ASSERT_EQ(code(script), 0);
      EXPECT_EQ(script.out.size(), rec["bytes"].get<std::size_t>());
      TempFile in(script.out, ".smt2");
      auto argv = split_command(solver());
      const auto piped = run_process(argv, in.path(), 120s);
      std::istringstream lines(piped.out);
      std::string status;
      lines >> status;
      EXPECT_EQ(status, rec["verdict"].get<std::string>()) << text;
    }
  }
}

TEST_F(CliTest, ExitCodesMatchOutcomes) {
  const auto corpus = gen::DeskCorpus(7).generate(25);
  for (const auto& f : corpus) {
    const auto r = cli({"solve", "--expr", pretty(f), "--max-states", "2", "--denominator", "2",
                        "--out", dir_.string(), "--solver", solver()});
    const auto report = nlohmann::json::parse(slurp(dir_ / "report.json"));
    const std::string outcome = report["outcome"];
    const int expected = outcome == "ModelFound" ? 0 : outcome == "NoModelUpTo" ? 1 : 2;
    EXPECT_EQ(code(r), expected) << pretty(f);
  }
}

TEST_F(CliTest, EnumerateReportsCount) {
  const auto r = cli({"enumerate", "--expr", "a", "--states", "2", "--denominator", "2"});
  ASSERT_EQ(code(r), 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["spaceSize"], 36);
  EXPECT_EQ(j["satisfying"], 18);
  const auto none = cli({"enumerate", "--expr", "a & !a", "--states", "1", "--denominator", "1"});
  EXPECT_EQ(code(none), 1);
  EXPECT_TRUE(nlohmann::json::parse(none.out)["witness"].is_null());
}
