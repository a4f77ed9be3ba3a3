#include "nashkit/equilibria.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nashkit {

namespace {

// One side of a game, viewed as "the player choosing among `n` strategies
// whose payoff row against the opponent's mixed strategy is payoff[i][.]".
// For the row player payoff[i][j] = R[i][j]; for the column player
// payoff[j][i] = C[i][j].
struct SideView {
  RatMat payoff;  // n x m: payoff[i][j] against opponent pure j
  int n() const { return static_cast<int>(payoff.size()); }
  int m() const { return static_cast<int>(payoff[0].size()); }
};

SideView row_view(const BimatrixGame& g) { return {g.R()}; }

SideView col_view(const BimatrixGame& g) {
  RatMat t(g.n_cols(), RatVec(g.n_rows()));
  for (int i = 0; i < g.n_rows(); ++i) {
    for (int j = 0; j < g.n_cols(); ++j) t[j][i] = g.C()[i][j];
  }
  return {t};
}

// True iff strategies i and i' of the side can never be simultaneously tied:
// one strictly outpays the other against every opponent pure strategy.
bool strictly_separated(const SideView& v, int i, int i2) {
  bool all_gt = true, all_lt = true;
  for (int j = 0; j < v.m(); ++j) {
    if (v.payoff[i][j] <= v.payoff[i2][j]) all_gt = false;
    if (v.payoff[i][j] >= v.payoff[i2][j]) all_lt = false;
    if (!all_gt && !all_lt) return false;
  }
  return true;
}

// Is there an opponent mixed strategy making every member of `tied` a best
// response simultaneously?
bool tied_set_feasible(const SideView& v, const IndexSet& tied) {
  const int m = v.m();
  FeasibilityProblem p;
  p.num_vars = m;
  p.nonneg.assign(m, true);
  p.add(make_eq(RatVec(m, Rational(1)), Rational(1)));
  const int i0 = tied.front();
  std::vector<bool> in_tied(v.n(), false);
  for (int i : tied) in_tied[i] = true;
  for (int i = 0; i < v.n(); ++i) {
    if (i == i0) continue;
    RatVec diff(m);
    for (int j = 0; j < m; ++j) diff[j] = v.payoff[i][j] - v.payoff[i0][j];
    if (in_tied[i]) {
      p.add(make_eq(std::move(diff), Rational(0)));
    } else {
      p.add(make_le(std::move(diff), Rational(0)));
    }
  }
  return solve_feasibility(p).feasible;
}

// All candidate support sets for one side: S such that some opponent strategy
// makes every member of S a best response. Feasibility is monotone (supersets
// of an infeasible set stay infeasible), so the subset lattice is pruned by
// depth-first extension.
std::vector<IndexSet> candidate_supports(const SideView& v, int max_support) {
  const int n = v.n();
  std::vector<std::vector<bool>> separated(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      separated[i][j] = separated[j][i] = strictly_separated(v, i, j);
    }
  }
  std::vector<IndexSet> out;
  IndexSet current;
  auto dfs = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) >= max_support) return;
    for (int t = start; t < n; ++t) {
      bool blocked = false;
      for (int u : current) {
        if (separated[u][t]) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      current.push_back(t);
      if (tied_set_feasible(v, current)) {
        out.push_back(current);
        self(self, t + 1);
      }
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

struct SideSolution {
  RatVec strategy;  // full-length opponent-facing mixed vector
  bool degenerate;
};

// Solves for the opponent strategy supported in `support` that ties every
// member of `tied` at the side's maximum payoff. Unique solutions come from
// the equality system; underdetermined pairs fall back to a feasibility
// witness and are flagged.
std::optional<SideSolution> solve_side(const SideView& v, const IndexSet& tied,
                                       const IndexSet& support) {
  const int m = v.m();
  const int s = static_cast<int>(support.size());
  const int i0 = tied.front();

  RatMat eqs;
  RatVec rhs;
  for (size_t t = 1; t < tied.size(); ++t) {
    RatVec row(s);
    for (int c = 0; c < s; ++c) {
      row[c] = v.payoff[tied[t]][support[c]] - v.payoff[i0][support[c]];
    }
    eqs.push_back(std::move(row));
    rhs.push_back(Rational(0));
  }
  eqs.push_back(RatVec(s, Rational(1)));
  rhs.push_back(Rational(1));

  std::vector<bool> in_tied(v.n(), false);
  for (int i : tied) in_tied[i] = true;

  auto expand = [&](const RatVec& compact) {
    RatVec full(m, Rational(0));
    for (int c = 0; c < s; ++c) full[support[c]] = compact[c];
    return full;
  };
  auto valid = [&](const RatVec& full) {
    for (const auto& p : full) {
      if (p < 0) return false;
    }
    Rational tie_value(0);
    for (int j = 0; j < m; ++j) tie_value += v.payoff[i0][j] * full[j];
    for (int k = 0; k < v.n(); ++k) {
      if (in_tied[k]) continue;
      Rational val(0);
      for (int j = 0; j < m; ++j) val += v.payoff[k][j] * full[j];
      if (val > tie_value) return false;
    }
    return true;
  };

  auto solved = solve_linear_system(eqs, rhs);
  if (solved.status == SolveStatus::Inconsistent) return std::nullopt;
  if (solved.status == SolveStatus::Unique) {
    RatVec full = expand(solved.solution);
    if (!valid(full)) return std::nullopt;
    return SideSolution{std::move(full), false};
  }

  // Underdetermined: pick one feasible representative of the solution set.
  FeasibilityProblem p;
  p.num_vars = s;
  p.nonneg.assign(s, true);
  for (size_t r = 0; r < eqs.size(); ++r) p.add(make_eq(eqs[r], rhs[r]));
  for (int k = 0; k < v.n(); ++k) {
    if (in_tied[k]) continue;
    RatVec row(s);
    for (int c = 0; c < s; ++c) row[c] = v.payoff[k][support[c]] - v.payoff[i0][support[c]];
    p.add(make_le(std::move(row), Rational(0)));
  }
  auto feas = solve_feasibility(p);
  if (!feas.feasible) return std::nullopt;
  RatVec full = expand(feas.witness);
  if (!valid(full)) throw std::logic_error("solve_side: infeasible witness");
  return SideSolution{std::move(full), true};
}

}  // namespace

std::vector<NeCertificate> enumerate_ne(const BimatrixGame& game, int max_support) {
  if (max_support <= 0) throw std::invalid_argument("max_support must be positive");
  const SideView rows = row_view(game);
  const SideView cols = col_view(game);
  const int row_cap = std::min(max_support, game.n_rows());
  const int col_cap = std::min(max_support, game.n_cols());

  const auto row_supports = candidate_supports(rows, row_cap);
  const auto col_supports = candidate_supports(cols, col_cap);

  std::map<std::pair<RatVec, RatVec>, NeCertificate> found;
  for (const auto& sr : row_supports) {
    for (const auto& sc : col_supports) {
      auto y_side = solve_side(rows, sr, sc);  // rows of sr tied, y lives on sc
      if (!y_side) continue;
      auto x_side = solve_side(cols, sc, sr);  // columns of sc tied, x lives on sr
      if (!x_side) continue;

      StrategyProfile profile{MixedStrategy(x_side->strategy), MixedStrategy(y_side->strategy)};
      NeCertificate cert;
      cert.row_support = profile.x.support();
      cert.col_support = profile.y.support();
      auto [pr, pc] = payoffs(game, profile);
      cert.welfare = pr + pc;
      cert.degenerate = x_side->degenerate || y_side->degenerate;
      cert.profile = std::move(profile);

      auto key = std::make_pair(cert.profile.x.probs(), cert.profile.y.probs());
      auto it = found.find(key);
      if (it == found.end()) {
        found.emplace(std::move(key), std::move(cert));
      } else if (it->second.degenerate && !cert.degenerate) {
        it->second.degenerate = false;
      }
    }
  }

  std::vector<NeCertificate> out;
  out.reserve(found.size());
  for (auto& [key, cert] : found) out.push_back(std::move(cert));
  std::sort(out.begin(), out.end(), [](const NeCertificate& a, const NeCertificate& b) {
    if (a.row_support != b.row_support) return a.row_support < b.row_support;
    if (a.col_support != b.col_support) return a.col_support < b.col_support;
    return std::make_pair(a.profile.x.probs(), a.profile.y.probs()) <
           std::make_pair(b.profile.x.probs(), b.profile.y.probs());
  });
  return out;
}

NeCertificate max_welfare_ne(const BimatrixGame& game) {
  auto all = enumerate_ne(game, std::max(game.n_rows(), game.n_cols()));
  if (all.empty()) throw std::logic_error("no equilibrium found in finite game");
  const NeCertificate* best = &all.front();
  for (const auto& cert : all) {
    if (cert.welfare > best->welfare) best = &cert;
  }
  return *best;
}

OracleAnswer verification_oracle(const BimatrixGame& game, const StrategyProfile& profile,
                                 const Rational& eps) {
  return {is_eps_ne(game, profile, eps) ? Verdict::Accept : Verdict::Reject};
}

OracleAnswer partial_verification_oracle(const BimatrixGame& game, Side side,
                                         const MixedStrategy& strategy, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  const int n = game.n_rows(), m = game.n_cols();

  FeasibilityProblem p;
  if (side == Side::Row) {
    if (strategy.size() != n) throw std::invalid_argument("row strategy length mismatch");
    p.num_vars = m;
    p.nonneg.assign(m, true);
    p.add(make_eq(RatVec(m, Rational(1)), Rational(1)));
    // x^T R y >= e_i^T R y - eps for every row i.
    RatVec xR(m, Rational(0));
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) xR[j] += strategy[i] * game.R()[i][j];
    }
    for (int i = 0; i < n; ++i) {
      RatVec row(m);
      for (int j = 0; j < m; ++j) row[j] = xR[j] - game.R()[i][j];
      p.add(make_ge(std::move(row), -eps));
    }
    // x^T C y >= (x^T C)_j - eps for every column j.
    RatVec xC(m, Rational(0));
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) xC[j] += strategy[i] * game.C()[i][j];
    }
    for (int j = 0; j < m; ++j) {
      p.add(make_ge(xC, Rational(xC[j] - eps)));
    }
  } else {
    if (strategy.size() != m) throw std::invalid_argument("column strategy length mismatch");
    p.num_vars = n;
    p.nonneg.assign(n, true);
    p.add(make_eq(RatVec(n, Rational(1)), Rational(1)));
    RatVec Ry(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) Ry[i] += game.R()[i][j] * strategy[j];
    }
    for (int i = 0; i < n; ++i) {
      p.add(make_ge(Ry, Rational(Ry[i] - eps)));
    }
    RatVec Cy(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) Cy[i] += game.C()[i][j] * strategy[j];
    }
    for (int j = 0; j < m; ++j) {
      RatVec row(n);
      for (int i = 0; i < n; ++i) row[i] = Cy[i] - game.C()[i][j];
      p.add(make_ge(std::move(row), -eps));
    }
  }
  return {solve_feasibility(p).feasible ? Verdict::Accept : Verdict::Reject};
}

namespace {

// Feasibility of "all strategies in `tied` are eps-best responses against
// some opponent strategy supported in `support`".
bool eps_br_feasible(const SideView& v, const IndexSet& tied, const IndexSet& support,
                     const Rational& eps) {
  const int s = static_cast<int>(support.size());
  FeasibilityProblem p;
  p.num_vars = s;
  p.nonneg.assign(s, true);
  p.add(make_eq(RatVec(s, Rational(1)), Rational(1)));
  for (int i : tied) {
    for (int k = 0; k < v.n(); ++k) {
      RatVec row(s);
      for (int c = 0; c < s; ++c) row[c] = v.payoff[i][support[c]] - v.payoff[k][support[c]];
      p.add(make_ge(std::move(row), -eps));
    }
  }
  return solve_feasibility(p).feasible;
}

void all_nonempty_subsets(const IndexSet& base, std::vector<IndexSet>& out) {
  const int k = static_cast<int>(base.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    IndexSet s;
    for (int b = 0; b < k; ++b) {
      if (mask & (1u << b)) s.push_back(base[b]);
    }
    out.push_back(std::move(s));
  }
}

}  // namespace

OracleAnswer support_oracle(const BimatrixGame& game, const IndexSet& row_support,
                            const IndexSet& col_support, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  if (row_support.empty() || col_support.empty()) {
    throw std::invalid_argument("support_oracle: empty support set");
  }
  for (int i : row_support) {
    if (i < 0 || i >= game.n_rows()) throw std::invalid_argument("row support out of range");
  }
  for (int j : col_support) {
    if (j < 0 || j >= game.n_cols()) throw std::invalid_argument("col support out of range");
  }
  if (row_support.size() > 20 || col_support.size() > 20) {
    throw std::invalid_argument("support_oracle: support sets too large to enumerate");
  }

  const SideView rows = row_view(game);
  const SideView cols = col_view(game);

  // A WNE with supp(x) = S_r', supp(y) = S_c' splits into two independent
  // linear systems, so scan sub-support pairs with memoized side checks.
  std::vector<IndexSet> row_subs, col_subs;
  all_nonempty_subsets(row_support, row_subs);
  all_nonempty_subsets(col_support, col_subs);

  std::map<std::pair<IndexSet, IndexSet>, bool> y_memo, x_memo;
  for (const auto& sr : row_subs) {
    for (const auto& sc : col_subs) {
      auto ykey = std::make_pair(sr, sc);
      auto yit = y_memo.find(ykey);
      if (yit == y_memo.end()) {
        yit = y_memo.emplace(ykey, eps_br_feasible(rows, sr, sc, eps)).first;
      }
      if (!yit->second) continue;
      auto xkey = std::make_pair(sc, sr);
      auto xit = x_memo.find(xkey);
      if (xit == x_memo.end()) {
        xit = x_memo.emplace(xkey, eps_br_feasible(cols, sc, sr, eps)).first;
      }
      if (xit->second) return {Verdict::Accept};
    }
  }
  return {Verdict::Reject};
}

}  // namespace nashkit
