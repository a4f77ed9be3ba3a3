// Acceptance gate: runs every criterion with its pinned seed and threshold,
// printing one pass/fail line each; exit status 0 iff all pass.

#include <cstring>
#include <iostream>

#include "nashkit/suite.hpp"

int main(int argc, char** argv) {
  nashkit::SuiteConfig cfg;
  cfg.log = &std::cout;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      cfg.only.push_back(std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    }
  }
  auto results = nashkit::run_acceptance_suite(cfg);
  int failures = 0;
  for (const auto& r : results) failures += r.passed ? 0 : 1;
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << " (" << results.size() << " run)" << std::endl;
  return failures == 0 ? 0 : 1;
}
