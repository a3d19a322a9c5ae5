// Acceptance gate: runs every end-to-end consistency check and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "apm/selftest.hpp"

int main() {
  int fails = 0;
  for (const auto& r : apm::run_selftests()) {
    std::printf("[%s] %-20s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.passed) ++fails;
  }
  if (fails) std::printf("%d criterion(s) failed\n", fails);
  return fails ? 1 : 0;
}
