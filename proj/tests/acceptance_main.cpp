// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <cstring>

#include "calogero/acceptance.hpp"

int main(int argc, char** argv) {
  calogero::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      opt.quick = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--quick]\n");
      return 2;
    }
  }
  int failed = 0;
  double total = 0.0;
  for (int id = 1; id <= calogero::kAcceptanceCriteria; ++id) {
    const auto row = calogero::run_criterion(id, opt);
    total += row.seconds;
    if (!row.passed) ++failed;
    std::printf("%s  C%-2d %-45s measured=%.3e threshold=%.3e  %.2fs  %s\n",
                row.passed ? "PASS" : "FAIL", row.id, row.name.c_str(), row.measured,
                row.threshold, row.seconds, row.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed in %.2fs\n", calogero::kAcceptanceCriteria - failed,
              calogero::kAcceptanceCriteria, total);
  return failed == 0 ? 0 : 1;
}
