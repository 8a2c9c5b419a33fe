// Acceptance gate: runs the validation checks and prints one PASS/FAIL line
// per criterion.  With a numeric argument it runs that single check (the
// form the test registry uses, so each criterion reports separately); with
// no argument it runs all eleven.  Exit status is nonzero when any executed
// check fails.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "cogrelay/cogrelay.hpp"

int main(int argc, char** argv) {
  using namespace cogrelay;
  ValidationOptions opts;  // fixed master seed: results are reproducible

  try {
    std::vector<CheckResult> results;
    if (argc > 1) {
      results.push_back(run_check(std::atoi(argv[1]), opts));
    } else {
      results = run_all_checks(opts);
    }

    bool all_passed = true;
    for (const CheckResult& r : results) {
      std::printf("c%02d %-34s %s  %s\n", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.detail.c_str());
      all_passed = all_passed && r.passed;
    }
    return all_passed ? EXIT_SUCCESS : EXIT_FAILURE;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "acceptance: %s\n", err.what());
    return EXIT_FAILURE;
  }
}
