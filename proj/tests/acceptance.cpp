// Acceptance suite: runs every verification group and prints one pass/fail
// line per group (details per check above it). Exit status 0 iff all pass.

#include <cstdio>
#include <exception>

#include "brf/verify.hpp"

int main() {
  std::vector<brf::verify::Group> groups;
  try {
    groups = brf::verify::run_suite("all");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite failed to run: %s\n", e.what());
    return 1;
  }

  std::printf("%s", brf::verify::format_report(groups).c_str());
  int failed = 0;
  std::printf("\n");
  for (size_t i = 0; i < groups.size(); ++i) {
    const bool ok = groups[i].pass();
    failed += ok ? 0 : 1;
    std::printf("[%2zu/%zu] %s  %s\n", i + 1, groups.size(),
                ok ? "PASS" : "FAIL", groups[i].name.c_str());
  }
  std::printf("RESULT: %zu/%zu groups passed\n", groups.size() - failed,
              groups.size());
  return failed == 0 ? 0 : 1;
}
