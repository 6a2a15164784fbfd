#pragma once

// Seeded consistency suites behind `bsk verify`. Each check compares the
// library against an oracle that does not share its code path: closed
// forms, the 50-digit summation oracle, or direct disk sampling.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bsk {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Names accepted by run_suite besides "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws ParameterError
/// on an unknown name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

}  // namespace bsk
