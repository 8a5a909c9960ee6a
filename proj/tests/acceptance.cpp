// One line per acceptance criterion; exit status 0 iff all pass.

#include "sysk/acceptance.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
  bool ok = true;
  for (const auto& c : sysk::acceptance::criteria()) {
    auto r = sysk::acceptance::run_criterion(c, seed);
    ok = ok && r.passed;
    std::printf("%s criterion %d: %s [%zu checks, %.2fs / %.0fs]%s%s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.checks.size(), r.seconds, r.budget_seconds, r.passed ? "" : " -- ",
                r.first_failure().c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
