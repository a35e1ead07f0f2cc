#pragma once

// Acceptance checks with their tolerances. Shared by the acceptance test
// binary and the `oracle` verb of the command-line tool.

#include <string>
#include <string_view>
#include <vector>

namespace d2d::oracle {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckEntry {
  std::string_view name;
  /// Short family name accepted by `d2dsim oracle <family>`.
  std::string_view family;
  CheckResult (*run)();
};

const std::vector<CheckEntry>& acceptance_checks();

/// Runs the checks whose family is in `families` (all when empty).
std::vector<CheckResult> run_checks(const std::vector<std::string>& families);

/// "PASS name: detail (0.012 s)"
std::string format_result(const CheckResult& result);

}  // namespace d2d::oracle
