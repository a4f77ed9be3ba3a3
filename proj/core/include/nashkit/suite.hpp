#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nashkit/rational.hpp"

namespace nashkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteConfig {
  uint64_t seed = 20250810;
  std::vector<int> only;        // criterion ids to run; empty = all
  std::ostream* log = nullptr;  // optional per-criterion progress lines
};

/// Runs the acceptance criteria with fixed seeds and exact thresholds.
std::vector<CriterionResult> run_acceptance_suite(const SuiteConfig& config);

/// Largest c with P[Binomial(trials, p) < c] <= alpha, computed exactly;
/// an observation >= c is consistent with success rate p at level alpha.
int binomial_lower_threshold(int trials, const Rational& p, const Rational& alpha);

}  // namespace nashkit
