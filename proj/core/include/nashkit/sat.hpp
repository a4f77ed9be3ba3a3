#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "nashkit/game.hpp"

namespace nashkit {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;
};

struct Clause {
  std::array<Literal, 3> lits;
};

struct CnfFormula {
  int n_vars = 0;
  std::vector<Clause> clauses;
};

struct Assignment {
  std::vector<bool> bits;
};

void validate_formula(const CnfFormula& formula);

/// m clauses over n variables; each clause picks 3 distinct variables
/// uniformly and independent uniform signs. Deterministic in the seed.
CnfFormula random_3sat(int n, int m, uint64_t seed);

bool clause_satisfied(const Clause& clause, const Assignment& a);
bool satisfies(const CnfFormula& formula, const Assignment& a);
Rational frac_satisfied(const CnfFormula& formula, const Assignment& a);

/// Exhaustive scan over all 2^n assignments (desk scale only).
std::optional<Assignment> find_satisfying(const CnfFormula& formula);
Rational max_frac_satisfiable(const CnfFormula& formula);

/// Two-prover free game over a balanced seeded partition of clauses and
/// variables. Answers are bit-strings over each group's variables in
/// ascending variable order (bit t = value of the t-th listed variable).
struct FreeGame {
  CnfFormula formula;
  std::vector<std::vector<int>> clause_groups;      // partition of clause indices
  std::vector<std::vector<int>> var_groups;         // partition of variables
  std::vector<std::vector<int>> clause_group_vars;  // distinct vars per clause group, ascending
  uint64_t seed = 0;

  int g1() const { return static_cast<int>(clause_groups.size()); }
  int g2() const { return static_cast<int>(var_groups.size()); }

  /// Verifier predicate: answer `a` satisfies every clause of group `ci` and
  /// agrees with `b` on every variable the two groups share.
  bool admissible(int ci, uint64_t a, int vj, uint64_t b) const;
};

FreeGame build_free_game(const CnfFormula& formula, int g1, int g2, uint64_t seed);

/// Cooperative bimatrix encoding: strategies are (group, answer) pairs in
/// (group asc, answer asc) order; both players earn 1 exactly on admissible
/// quadruples. Throws if either side exceeds `cap` strategies.
BimatrixGame cooperative_game(const FreeGame& fg, size_t cap = 4096);

/// Row/column strategy index of a (group, answer) pair in cooperative_game.
int coop_row_index(const FreeGame& fg, int ci, uint64_t answer);
int coop_col_index(const FreeGame& fg, int vj, uint64_t answer);

/// Uniform-over-questions profile induced by a satisfying assignment.
StrategyProfile assignment_to_profile(const FreeGame& fg, const Assignment& a);

/// Max acceptance probability over deterministic strategy pairs, by brute
/// force over full variable assignments (column side) and per-group best
/// responses (row side).
Rational game_value(const FreeGame& fg, uint64_t cap = (1ull << 22));

}  // namespace nashkit
