// Runs the nine acceptance criteria and prints one PASS/FAIL line each.

#include <cstdio>

#include "quatkit/verify.hpp"

int main() {
  int failures = 0;
  for (const auto& r : quatkit::run_acceptance()) {
    const bool ok = r.pass();
    failures += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (residual %.3e, tolerance %.1e, %.2f s of %.0f s)\n", ok ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.residual, r.tolerance, r.seconds, r.time_limit);
    if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
