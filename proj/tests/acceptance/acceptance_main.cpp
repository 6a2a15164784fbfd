// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsk/suites.hpp"

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 20240601;
constexpr double kStarlikeCriticalNu = 2.0381807051618718;

struct Criterion {
  std::string id;
  std::string title;
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, std::string detail) {
    passed = passed && ok;
    details.push_back((ok ? "ok:   " : "FAIL: ") + std::move(detail));
  }
};

void from_suites(Criterion& c, std::initializer_list<const char*> suites) {
  for (const char* name : suites) {
    for (const auto& check : bsk::run_suite(name, kSeed).checks) {
      c.require(check.passed, check.suite + " / " + check.name + ": " + check.detail);
    }
  }
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string("\"") + BSK_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = ::pclose(pipe);
  if (output) *output = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string field(const std::string& output, const std::string& key) {
  std::istringstream is(output);
  for (std::string line; std::getline(is, line);) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return {};
}

void scan_flip(Criterion& c, const fs::path& dir) {
  const auto out = dir / "starlike.csv";
  const int code = run_cli("scan starlike --nu-range 0.6 20 98 --out " + out.string());
  c.require(code == 0, "starlike scan over [0.6, 20] exits " + std::to_string(code));
  const auto rows = csv_rows(slurp(out));
  int flips = 0;
  double before = 0.0, after = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][8] != rows[i - 1][8]) {
      ++flips;
      before = std::stod(rows[i - 1][2]);
      after = std::stod(rows[i][2]);
    }
  }
  const bool brackets = before < kStarlikeCriticalNu && kStarlikeCriticalNu <= after;
  c.require(rows.size() == 98 && flips == 1 && brackets,
            "holds column flips " + std::to_string(flips) + " time(s), between nu = " +
                std::to_string(before) + " and " + std::to_string(after));
}

void cli_determinism(Criterion& c, const fs::path& dir) {
  const std::string grid =
      "scan t --nu-range -0.45 12 9 --alpha-range 0 0.9 4 --lambda-range 0 0.8 3";
  const auto a = dir / "a.csv", b = dir / "b.csv", threaded = dir / "c.csv";
  const int ca = run_cli(grid + " --threads 1 --out " + a.string());
  const int cb = run_cli(grid + " --threads 1 --out " + b.string());
  const int cc = run_cli(grid + " --threads 8 --out " + threaded.string());
  const auto text = slurp(a);
  c.require(ca == 0 && cb == 0 && cc == 0 && !text.empty() && text == slurp(b) &&
                text == slurp(threaded),
            "repeated scans (1 and 8 threads) are byte-identical");

  int replayed = 0, mismatched = 0;
  for (const auto& row : csv_rows(text)) {
    std::string out;
    const int code = run_cli("check t --form " + row[1] + " --nu " + row[2] + " --lambda " +
                                 row[3] + " --alpha " + row[4],
                             &out);
    const bool same = field(out, "lhs") == row[5] && field(out, "rhs") == row[6] &&
                      field(out, "margin") == row[7] && field(out, "holds") == row[8] &&
                      code == (row[8] == "true" ? 0 : 1);
    ++replayed;
    if (!same) ++mismatched;
  }
  c.require(replayed == 108 && mismatched == 0,
            std::to_string(replayed) + " rows replayed through check, " +
                std::to_string(mismatched) + " mismatches");
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("bsk_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  std::vector<Criterion> criteria{
      {"AC1", "closed-form specializations"},
      {"AC2", "moment identities"},
      {"AC3", "condition cross-check against 50-digit oracle"},
      {"AC4", "stated versus proof form"},
      {"AC5", "sufficiency by disk sampling and coefficient sums"},
      {"AC6", "necessity on negative coefficients"},
      {"AC7", "ODE residual"},
      {"AC8", "critical order bisection"},
      {"AC9", "CLI determinism and replay"},
  };
  from_suites(criteria[0], {"closed-form"});
  from_suites(criteria[1], {"moments"});
  from_suites(criteria[2], {"oracle"});
  from_suites(criteria[3], {"forms"});
  from_suites(criteria[4], {"sufficiency"});
  from_suites(criteria[5], {"necessity"});
  from_suites(criteria[6], {"ode"});
  from_suites(criteria[7], {"critical"});
  scan_flip(criteria[7], dir);
  cli_determinism(criteria[8], dir);
  fs::remove_all(dir);

  int failed = 0;
  for (const auto& c : criteria) {
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << '\n';
    for (const auto& d : c.details) std::cout << "         " << d << '\n';
    if (!c.passed) ++failed;
  }
  std::cout << criteria.size() - failed << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
