#include "nashkit/sat.hpp"

#include <algorithm>
#include <stdexcept>

#include "nashkit/rng.hpp"

namespace nashkit {

void validate_formula(const CnfFormula& formula) {
  if (formula.n_vars < 1) throw std::invalid_argument("formula needs variables");
  for (const auto& cl : formula.clauses) {
    for (const auto& lit : cl.lits) {
      if (lit.var < 0 || lit.var >= formula.n_vars) {
        throw std::invalid_argument("literal variable out of range");
      }
    }
    if (cl.lits[0].var == cl.lits[1].var || cl.lits[0].var == cl.lits[2].var ||
        cl.lits[1].var == cl.lits[2].var) {
      throw std::invalid_argument("duplicate variable within a clause");
    }
  }
}

CnfFormula random_3sat(int n, int m, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_3sat: need at least 3 variables");
  if (m < 0) throw std::invalid_argument("random_3sat: negative clause count");
  CounterRng rng(seed);
  CnfFormula f;
  f.n_vars = n;
  f.clauses.reserve(m);
  for (int c = 0; c < m; ++c) {
    int v0 = static_cast<int>(rng.below(n));
    int v1 = v0;
    while (v1 == v0) v1 = static_cast<int>(rng.below(n));
    int v2 = v0;
    while (v2 == v0 || v2 == v1) v2 = static_cast<int>(rng.below(n));
    int vars[3] = {v0, v1, v2};
    std::sort(vars, vars + 3);
    Clause cl;
    for (int t = 0; t < 3; ++t) cl.lits[t] = {vars[t], rng.coin()};
    f.clauses.push_back(cl);
  }
  return f;
}

bool clause_satisfied(const Clause& clause, const Assignment& a) {
  for (const auto& lit : clause.lits) {
    if (a.bits[lit.var] != lit.negated) return true;
  }
  return false;
}

bool satisfies(const CnfFormula& formula, const Assignment& a) {
  if (static_cast<int>(a.bits.size()) != formula.n_vars) {
    throw std::invalid_argument("assignment length mismatch");
  }
  for (const auto& cl : formula.clauses) {
    if (!clause_satisfied(cl, a)) return false;
  }
  return true;
}

Rational frac_satisfied(const CnfFormula& formula, const Assignment& a) {
  if (static_cast<int>(a.bits.size()) != formula.n_vars) {
    throw std::invalid_argument("assignment length mismatch");
  }
  if (formula.clauses.empty()) return Rational(1);
  long sat = 0;
  for (const auto& cl : formula.clauses) {
    if (clause_satisfied(cl, a)) ++sat;
  }
  return make_rational(sat, static_cast<long>(formula.clauses.size()));
}

namespace {

Assignment assignment_from_bits(int n, uint64_t bits) {
  Assignment a;
  a.bits.resize(n);
  for (int i = 0; i < n; ++i) a.bits[i] = (bits >> i) & 1u;
  return a;
}

}  // namespace

std::optional<Assignment> find_satisfying(const CnfFormula& formula) {
  if (formula.n_vars > 24) throw std::invalid_argument("find_satisfying: too many variables");
  for (uint64_t bits = 0; bits < (1ull << formula.n_vars); ++bits) {
    Assignment a = assignment_from_bits(formula.n_vars, bits);
    if (satisfies(formula, a)) return a;
  }
  return std::nullopt;
}

Rational max_frac_satisfiable(const CnfFormula& formula) {
  if (formula.n_vars > 24) throw std::invalid_argument("max_frac_satisfiable: too many variables");
  Rational best(0);
  for (uint64_t bits = 0; bits < (1ull << formula.n_vars); ++bits) {
    Assignment a = assignment_from_bits(formula.n_vars, bits);
    Rational f = frac_satisfied(formula, a);
    if (f > best) best = f;
  }
  return best;
}

namespace {

// Balanced seeded partition: Fisher-Yates shuffle, then deal round-robin so
// group sizes differ by at most one; groups are sorted for canonical answers.
std::vector<std::vector<int>> balanced_partition(int count, int groups, CounterRng& rng) {
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  for (int i = count - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  std::vector<std::vector<int>> out(groups);
  for (int i = 0; i < count; ++i) out[i % groups].push_back(order[i]);
  for (auto& g : out) std::sort(g.begin(), g.end());
  return out;
}

int var_position(const std::vector<int>& vars, int v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) return -1;
  return static_cast<int>(it - vars.begin());
}

}  // namespace

FreeGame build_free_game(const CnfFormula& formula, int g1, int g2, uint64_t seed) {
  validate_formula(formula);
  const int m = static_cast<int>(formula.clauses.size());
  if (g1 < 1 || g1 > m) throw std::invalid_argument("build_free_game: bad clause group count");
  if (g2 < 1 || g2 > formula.n_vars) throw std::invalid_argument("build_free_game: bad var group count");

  FreeGame fg;
  fg.formula = formula;
  fg.seed = seed;
  CounterRng rng(seed, /*stream=*/1);
  fg.clause_groups = balanced_partition(m, g1, rng);
  CounterRng rng2(seed, /*stream=*/2);
  fg.var_groups = balanced_partition(formula.n_vars, g2, rng2);

  fg.clause_group_vars.resize(g1);
  for (int i = 0; i < g1; ++i) {
    std::vector<int> vars;
    for (int ci : fg.clause_groups[i]) {
      for (const auto& lit : formula.clauses[ci].lits) vars.push_back(lit.var);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    fg.clause_group_vars[i] = std::move(vars);
  }
  return fg;
}

bool FreeGame::admissible(int ci, uint64_t a, int vj, uint64_t b) const {
  const auto& vars = clause_group_vars[ci];
  for (int cl_idx : clause_groups[ci]) {
    const Clause& cl = formula.clauses[cl_idx];
    bool sat = false;
    for (const auto& lit : cl.lits) {
      int pos = var_position(vars, lit.var);
      bool value = (a >> pos) & 1u;
      if (value != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  const auto& vg = var_groups[vj];
  for (size_t t = 0; t < vg.size(); ++t) {
    int pos = var_position(vars, vg[t]);
    if (pos < 0) continue;  // variable not shared
    if (((a >> pos) & 1u) != ((b >> t) & 1u)) return false;
  }
  return true;
}

namespace {

std::vector<size_t> row_offsets(const FreeGame& fg) {
  std::vector<size_t> off(fg.g1() + 1, 0);
  for (int i = 0; i < fg.g1(); ++i) {
    off[i + 1] = off[i] + (1ull << fg.clause_group_vars[i].size());
  }
  return off;
}

std::vector<size_t> col_offsets(const FreeGame& fg) {
  std::vector<size_t> off(fg.g2() + 1, 0);
  for (int j = 0; j < fg.g2(); ++j) {
    off[j + 1] = off[j] + (1ull << fg.var_groups[j].size());
  }
  return off;
}

}  // namespace

int coop_row_index(const FreeGame& fg, int ci, uint64_t answer) {
  return static_cast<int>(row_offsets(fg)[ci] + answer);
}

int coop_col_index(const FreeGame& fg, int vj, uint64_t answer) {
  return static_cast<int>(col_offsets(fg)[vj] + answer);
}

BimatrixGame cooperative_game(const FreeGame& fg, size_t cap) {
  const auto roff = row_offsets(fg);
  const auto coff = col_offsets(fg);
  const size_t rows = roff.back(), cols = coff.back();
  if (rows > cap || cols > cap) {
    throw std::invalid_argument("cooperative_game: strategy space exceeds cap");
  }
  RatMat R(rows, RatVec(cols, Rational(0)));
  for (int i = 0; i < fg.g1(); ++i) {
    const uint64_t n_answers = 1ull << fg.clause_group_vars[i].size();
    for (uint64_t a = 0; a < n_answers; ++a) {
      for (int j = 0; j < fg.g2(); ++j) {
        const uint64_t m_answers = 1ull << fg.var_groups[j].size();
        for (uint64_t b = 0; b < m_answers; ++b) {
          if (fg.admissible(i, a, j, b)) {
            R[roff[i] + a][coff[j] + b] = 1;
          }
        }
      }
    }
  }
  RatMat C = R;
  return BimatrixGame(std::move(R), std::move(C), Rational(1));
}

StrategyProfile assignment_to_profile(const FreeGame& fg, const Assignment& a) {
  if (!satisfies(fg.formula, a)) {
    throw std::invalid_argument("assignment_to_profile: assignment does not satisfy the formula");
  }
  const auto roff = row_offsets(fg);
  const auto coff = col_offsets(fg);
  RatVec x(roff.back(), Rational(0));
  const Rational rw = make_rational(1, fg.g1());
  for (int i = 0; i < fg.g1(); ++i) {
    uint64_t ans = 0;
    const auto& vars = fg.clause_group_vars[i];
    for (size_t t = 0; t < vars.size(); ++t) {
      if (a.bits[vars[t]]) ans |= (1ull << t);
    }
    x[roff[i] + ans] = rw;
  }
  RatVec y(coff.back(), Rational(0));
  const Rational cw = make_rational(1, fg.g2());
  for (int j = 0; j < fg.g2(); ++j) {
    uint64_t ans = 0;
    const auto& vars = fg.var_groups[j];
    for (size_t t = 0; t < vars.size(); ++t) {
      if (a.bits[vars[t]]) ans |= (1ull << t);
    }
    y[coff[j] + ans] = cw;
  }
  return {MixedStrategy(std::move(x)), MixedStrategy(std::move(y))};
}

Rational game_value(const FreeGame& fg, uint64_t cap) {
  const int n = fg.formula.n_vars;
  uint64_t row_answers_total = 0;
  for (int i = 0; i < fg.g1(); ++i) row_answers_total += 1ull << fg.clause_group_vars[i].size();
  const uint64_t work = (1ull << n) * row_answers_total * static_cast<uint64_t>(fg.g2());
  if (n > 24 || work > cap) throw std::invalid_argument("game_value: search space exceeds cap");

  // A deterministic column strategy is exactly a full assignment (the groups
  // partition the variables); the best row strategy then decomposes by group.
  long best_hits = -1;
  for (uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::vector<uint64_t> col_answer(fg.g2(), 0);
    for (int j = 0; j < fg.g2(); ++j) {
      const auto& vars = fg.var_groups[j];
      for (size_t t = 0; t < vars.size(); ++t) {
        if ((bits >> vars[t]) & 1u) col_answer[j] |= (1ull << t);
      }
    }
    long hits = 0;
    for (int i = 0; i < fg.g1(); ++i) {
      const uint64_t n_answers = 1ull << fg.clause_group_vars[i].size();
      long best_row = 0;
      for (uint64_t a = 0; a < n_answers; ++a) {
        long h = 0;
        for (int j = 0; j < fg.g2(); ++j) {
          if (fg.admissible(i, a, j, col_answer[j])) ++h;
        }
        best_row = std::max(best_row, h);
      }
      hits += best_row;
    }
    best_hits = std::max(best_hits, hits);
  }
  return make_rational(best_hits, static_cast<long>(fg.g1()) * fg.g2());
}

}  // namespace nashkit
