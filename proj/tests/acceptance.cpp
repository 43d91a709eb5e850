// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and time budgets are fixed in jinv/acceptance.hpp.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "jinv/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "-v" || a == "--verbose")
      verbose = true;
  }
  int failed = 0;
  jinv::run_acceptance(seed, [&](const jinv::CriterionResult& r) {
    std::printf("criterion %2d %s  %-78s %9.0f ms (budget %.0f ms)%s\n", r.id, r.pass() ? "PASS" : "FAIL", r.title.c_str(),
                r.elapsed_ms, r.budget_ms, r.within_budget() ? "" : "  over budget");
    if (verbose || !r.pass()) std::printf("             %s\n", r.detail.dump().c_str());
    std::fflush(stdout);
    failed += !r.pass();
  });
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
