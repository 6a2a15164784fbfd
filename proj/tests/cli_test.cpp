#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string("\"") + BSK_CLI_PATH + "\" " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream is(row);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  return out;
}

std::string field(const std::string& output, const std::string& key) {
  for (const auto& line : lines(output)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return {};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bsk_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EvalPrintsKernelQuantities) {
  const auto r = run("eval --nu -0.5 --z 1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(std::stod(field(r.output, "S")), 2.718281828459045, 1e-12);
  EXPECT_NEAR(std::stod(field(r.output, "s1")), 2.718281828459045, 1e-12);
  EXPECT_EQ(field(r.output, "operator_valid"), "false");
}

TEST_F(CliTest, DomainErrorsExitTwo) {
  EXPECT_EQ(run("eval --nu -1.5 --z 0.5").exit_code, 2);
  EXPECT_EQ(run("check t --nu -0.7 --lambda 0.1 --alpha 0.1").exit_code, 2);
  EXPECT_EQ(run("check t --nu 1 --lambda 1.0 --alpha 0.1").exit_code, 2);
  EXPECT_EQ(run("check jnu --nu 1 --A 0.2 --B 0.5 --tau 1").exit_code, 2);
}

TEST_F(CliTest, CheckExitCodesFollowTheVerdict) {
  const auto fails = run("check starlike --nu 0.5");
  EXPECT_EQ(fails.exit_code, 1);
  EXPECT_EQ(field(fails.output, "holds"), "false");
  const auto holds = run("check starlike --nu 3");
  EXPECT_EQ(holds.exit_code, 0);
  EXPECT_EQ(field(holds.output, "holds"), "true");
  const auto t = run("check t --nu 1 --lambda 0.3 --alpha 0.2");
  EXPECT_NEAR(std::stod(field(t.output, "lhs")), 2.626555010326234, 1e-12);
  const auto stated = run("check t --nu 1 --lambda 0.3 --alpha 0.2 --form stated");
  EXPECT_EQ(field(stated.output, "form"), "stated");
  EXPECT_LT(std::stod(field(stated.output, "lhs")), std::stod(field(t.output, "lhs")));
}

TEST_F(CliTest, ScanWritesFullGrid) {
  const auto out = path("grid.csv");
  const auto r = run("scan t --nu-range 0 10 10 --alpha-range 0 0.9 10 --lambda 0.2 --out " + out);
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 101u);
  EXPECT_EQ(rows[0], "condition,form,nu,lambda,alpha,lhs,rhs,margin,holds");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(split(rows[i]).size(), 9u);
}

TEST_F(CliTest, StarlikeScanFlipsOnce) {
  const auto out = path("flip.csv");
  ASSERT_EQ(run("scan starlike --nu-range 0.5 20 40 --out " + out).exit_code, 0);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 41u);
  int flips = 0;
  std::string prev;
  double flip_nu = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    if (i > 1 && cells[8] != prev) {
      ++flips;
      flip_nu = std::stod(cells[2]);
    }
    prev = cells[8];
  }
  EXPECT_EQ(flips, 1);
  EXPECT_EQ(prev, "true");
  EXPECT_GT(flip_nu, 2.0381807051618718);
  EXPECT_LT(flip_nu, 2.0381807051618718 + 19.5 / 39.0 + 1e-9);
}

TEST_F(CliTest, ScanIsDeterministicAcrossRunsAndThreadCounts) {
  const std::string grid = "scan l --nu-range -0.4 15 12 --alpha-range 0 0.8 5 --lambda-range 0 0.9 4";
  ASSERT_EQ(run(grid + " --threads 1 --out " + path("a.csv")).exit_code, 0);
  ASSERT_EQ(run(grid + " --threads 1 --out " + path("b.csv")).exit_code, 0);
  ASSERT_EQ(run(grid + " --threads 7 --out " + path("c.csv")).exit_code, 0);
  const auto a = slurp(path("a.csv"));
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_EQ(a, slurp(path("c.csv")));
}

TEST_F(CliTest, ScanRowsReplayThroughCheck) {
  const auto out = path("replay.csv");
  ASSERT_EQ(run("scan t --nu-range 0 6 3 --alpha-range 0.1 0.7 2 --lambda 0.4 --out " + out)
                .exit_code,
            0);
  const auto rows = lines(slurp(out));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = split(rows[i]);
    const auto r = run("check t --nu " + c[2] + " --lambda " + c[3] + " --alpha " + c[4]);
    EXPECT_EQ(field(r.output, "lhs"), c[5]);
    EXPECT_EQ(field(r.output, "margin"), c[7]);
    EXPECT_EQ(field(r.output, "holds"), c[8]);
    EXPECT_EQ(r.exit_code, c[8] == "true" ? 0 : 1);
  }
}

TEST_F(CliTest, InvalidScanLeavesNoFile) {
  const auto out = path("never.csv");
  EXPECT_EQ(run("scan t --nu-range -0.9 3 5 --lambda 0.1 --out " + out).exit_code, 2);
  EXPECT_EQ(run("scan t --nu-range 0 3 5 --alpha-range 0 1.5 3 --out " + out).exit_code, 2);
  EXPECT_EQ(run("scan starlike --nu-range 0 3 5 --lambda 0.3 --out " + out).exit_code, 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, CriticalFindsStarlikeThreshold) {
  const auto r = run("critical starlike --lo 0.6 --hi 20");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(std::stod(field(r.output, "nu_star")), 2.0381807051618718, 1e-9);
  EXPECT_LE(std::abs(std::stod(field(r.output, "margin"))), 1e-10);
}

TEST_F(CliTest, CriticalRejectsBadBracket) {
  const auto r = run("critical starlike --lo 3 --hi 5", true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("margin(3)"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("margin(5)"), std::string::npos) << r.output;
}

TEST_F(CliTest, VerifySuite) {
  const auto r = run("verify --suite ode");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("[PASS]"), std::string::npos);
  EXPECT_EQ(r.output.find("[FAIL]"), std::string::npos);
  EXPECT_EQ(run("verify --suite moments --seed 99").exit_code, 0);
  EXPECT_EQ(run("verify --suite nonexistent").exit_code, 2);
}

TEST_F(CliTest, SeriesFileOutcomes) {
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(path(name)) << body;
    return path(name);
  };
  const auto holds = write("holds.txt", "# sign: negative\n2 0.5\n");
  const auto fails = write("fails.txt", "# sign: negative\n2 0.6\n");
  const auto unsure = write("unsure.txt", "# sign: negative\n# tail_bound: 0.7\n2 0.2\n");
  EXPECT_EQ(run("check t --lambda 0 --alpha 0 --series-file " + holds).exit_code, 0);
  EXPECT_EQ(run("check t --lambda 0 --alpha 0 --series-file " + fails).exit_code, 1);
  EXPECT_EQ(run("check t --lambda 0 --alpha 0 --series-file " + unsure).exit_code, 3);
  EXPECT_EQ(run("check qnu --series-file " + holds).exit_code, 2);
  EXPECT_EQ(run("check t --series-file " + path("missing.txt")).exit_code, 2);
  const auto r = run("check jnu --nu 2 --A 1 --B -1 --tau 1 --series-file " + holds);
  EXPECT_EQ(r.exit_code, 0);
}

TEST_F(CliTest, HelpAndUnknownCommands) {
  EXPECT_EQ(run("--help").exit_code, 0);
  EXPECT_EQ(run("scan --help").exit_code, 0);
  EXPECT_EQ(run("bogus").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("check t --nu 1 --nonsense 3").exit_code, 2);
}

TEST_F(CliTest, ConfigFileDefaultsYieldToFlags) {
  const auto cfg = path("bsk.ini");
  std::ofstream(cfg) << "[check]\nnu = 1\nlambda = 0.3\nalpha = 0.2\n";
  const auto from_file = run("--config " + cfg + " check t");
  EXPECT_EQ(field(from_file.output, "lhs"), "2.6265550103262338");
  const auto overridden = run("--config " + cfg + " check t --alpha 0");
  EXPECT_EQ(field(overridden.output, "alpha"), "0");
  EXPECT_EQ(field(overridden.output, "lambda"), "0.29999999999999999");
}

TEST_F(CliTest, GlobalToleranceAcceptedAfterSubcommand) {
  const auto r = run("check t --nu 1 --lambda 0.3 --alpha 0.2 --tol 1e-14");
  ASSERT_EQ(r.exit_code, 1);
  EXPECT_NEAR(std::stod(field(r.output, "lhs")), 2.626555010326234, 1e-14);
}

}  // namespace
