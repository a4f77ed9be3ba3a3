#pragma once

#include <optional>
#include <vector>

#include "nashkit/rational.hpp"

namespace nashkit {

enum class Rel { Le, Ge, Eq };

struct LinConstraint {
  RatVec a;
  Rel rel = Rel::Le;
  Rational b;
};

inline LinConstraint make_le(RatVec a, Rational b) { return {std::move(a), Rel::Le, std::move(b)}; }
inline LinConstraint make_ge(RatVec a, Rational b) { return {std::move(a), Rel::Ge, std::move(b)}; }
inline LinConstraint make_eq(RatVec a, Rational b) { return {std::move(a), Rel::Eq, std::move(b)}; }

struct FeasibilityProblem {
  int num_vars = 0;
  std::vector<LinConstraint> constraints;
  // Variables flagged here are handled natively as x_i >= 0 by the simplex
  // backend; empty means all variables are free.
  std::vector<bool> nonneg;

  void add(LinConstraint c) { constraints.push_back(std::move(c)); }
};

struct FeasibilityResult {
  bool feasible = false;
  RatVec witness;  // meaningful iff feasible
};

/// Exact feasibility with witness. Fourier–Motzkin for systems with <= 12
/// variables, exact-pivot phase-1 simplex beyond that (and when elimination
/// exceeds its growth cap).
FeasibilityResult solve_feasibility(const FeasibilityProblem& problem);

/// Elimination backend. Returns nullopt if intermediate systems exceed
/// growth_cap rows (caller should fall back to the simplex backend).
std::optional<FeasibilityResult> fourier_motzkin(const FeasibilityProblem& problem,
                                                 size_t growth_cap = 20000);

FeasibilityResult simplex_phase1(const FeasibilityProblem& problem);

bool satisfies_all(const RatVec& x, const std::vector<LinConstraint>& constraints);

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

struct LinearSolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  RatVec solution;  // meaningful iff status == Unique
};

/// Exact Gaussian elimination for A x = b, any shape.
LinearSolveResult solve_linear_system(const RatMat& A, const RatVec& b);

}  // namespace nashkit
