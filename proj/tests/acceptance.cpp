// Prints one PASS/FAIL line per acceptance check. Optional arguments select
// check families or individual checks by name.

#include <cstdio>
#include <string>
#include <vector>

#include "checks.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> families(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& r : d2d::oracle::run_checks(families)) {
    std::puts(d2d::oracle::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
