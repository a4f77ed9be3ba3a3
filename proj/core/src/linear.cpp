#include "nashkit/linear.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace nashkit {

namespace {

// Row in <= form: a . x <= b, stored as integer-content-normalized rationals.
struct Row {
  RatVec a;
  Rational b;
};

// Scales the row so all entries are coprime integers. Keeps elimination
// coefficients from ballooning.
void normalize_row(Row& row) {
  BigInt lcm(1);
  for (const auto& c : row.a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), row.b.get_den().get_mpz_t());
  BigInt gcd(0);
  auto scale_and_gcd = [&](Rational& r) {
    r *= Rational(lcm);
    r.canonicalize();
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), r.get_num().get_mpz_t());
  };
  for (auto& c : row.a) scale_and_gcd(c);
  scale_and_gcd(row.b);
  if (gcd > 1) {
    Rational g(gcd);
    for (auto& c : row.a) {
      c /= g;
      c.canonicalize();
    }
    row.b /= g;
    row.b.canonicalize();
  }
}

std::vector<Row> to_le_rows(const FeasibilityProblem& problem) {
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size() * 2);
  for (const auto& c : problem.constraints) {
    if (static_cast<int>(c.a.size()) != problem.num_vars) {
      throw std::invalid_argument("constraint arity mismatch");
    }
    if (c.rel == Rel::Le || c.rel == Rel::Eq) {
      rows.push_back({c.a, c.b});
    }
    if (c.rel == Rel::Ge || c.rel == Rel::Eq) {
      Row neg;
      neg.a.reserve(c.a.size());
      for (const auto& v : c.a) neg.a.push_back(-v);
      neg.b = -c.b;
      rows.push_back(std::move(neg));
    }
  }
  if (!problem.nonneg.empty()) {
    for (int i = 0; i < problem.num_vars; ++i) {
      if (problem.nonneg[i]) {
        Row r;
        r.a.assign(problem.num_vars, Rational(0));
        r.a[i] = -1;
        r.b = 0;
        rows.push_back(std::move(r));
      }
    }
  }
  for (auto& r : rows) normalize_row(r);
  return rows;
}

// Exact comparison key for deduplication.
struct RowLess {
  bool operator()(const Row& lhs, const Row& rhs) const {
    for (size_t i = 0; i < lhs.a.size(); ++i) {
      int c = cmp(lhs.a[i], rhs.a[i]);
      if (c != 0) return c < 0;
    }
    return lhs.b < rhs.b;
  }
};

void dedupe(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), RowLess{});
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Row& x, const Row& y) {
                           return x.a == y.a && x.b == y.b;
                         }),
             rows.end());
}

}  // namespace

std::optional<FeasibilityResult> fourier_motzkin(const FeasibilityProblem& problem,
                                                 size_t growth_cap) {
  const int n = problem.num_vars;
  std::vector<Row> current = to_le_rows(problem);

  // systems[j] holds the rows over variables 0..j, before x_j is eliminated.
  std::vector<std::vector<Row>> systems(n);

  for (int j = n - 1; j >= 0; --j) {
    systems[j] = current;
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const auto& r : current) {
      int s = sgn(r.a[j]);
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        Row combo;
        combo.a.assign(n, Rational(0));
        const Rational pj = p->a[j];
        const Rational qj = -q->a[j];  // > 0
        for (int i = 0; i < j; ++i) combo.a[i] = qj * p->a[i] + pj * q->a[i];
        combo.b = qj * p->b + pj * q->b;
        normalize_row(combo);
        bool all_zero = std::all_of(combo.a.begin(), combo.a.end(),
                                    [](const Rational& v) { return v == 0; });
        if (all_zero) {
          if (combo.b < 0) return FeasibilityResult{false, {}};
          continue;
        }
        next.push_back(std::move(combo));
        if (next.size() > growth_cap) return std::nullopt;
      }
    }
    dedupe(next);
    if (next.size() > growth_cap) return std::nullopt;
    current = std::move(next);
  }

  // Only constant rows remain: 0 <= b.
  for (const auto& r : current) {
    if (r.b < 0) return FeasibilityResult{false, {}};
  }

  // Back-substitute a witness, picking a point inside each variable's interval.
  RatVec x(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& r : systems[j]) {
      if (r.a[j] == 0) continue;
      Rational rest = r.b;
      for (int i = 0; i < j; ++i) rest -= r.a[i] * x[i];
      Rational bound = rest / r.a[j];
      if (r.a[j] > 0) {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      } else {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      }
    }
    if (has_lo && has_hi && lo > hi) {
      // Cannot happen for a sound elimination; guard against bugs.
      throw std::logic_error("fourier_motzkin: empty interval during back-substitution");
    }
    if (!has_lo && !has_hi) {
      x[j] = 0;
    } else if (!has_lo) {
      x[j] = hi >= 0 ? Rational(0) : hi;
    } else if (!has_hi) {
      x[j] = lo <= 0 ? Rational(0) : lo;
    } else if (lo <= 0 && hi >= 0) {
      x[j] = 0;
    } else {
      x[j] = (lo + hi) / 2;
    }
  }
  return FeasibilityResult{true, std::move(x)};
}

FeasibilityResult simplex_phase1(const FeasibilityProblem& problem) {
  const int n = problem.num_vars;
  const auto& nonneg = problem.nonneg;
  auto is_nonneg = [&](int i) { return !nonneg.empty() && nonneg[i]; };

  // Column layout: one column per nonnegative variable, two (u - w) per free
  // variable, then one slack per inequality, then one artificial per row.
  std::vector<int> var_col(n), var_negcol(n, -1);
  int cols = 0;
  for (int i = 0; i < n; ++i) {
    var_col[i] = cols++;
    if (!is_nonneg(i)) var_negcol[i] = cols++;
  }
  struct PreRow {
    RatVec a;
    Rational b;
    bool has_slack;
    int slack_sign;
  };
  std::vector<PreRow> pre;
  for (const auto& c : problem.constraints) {
    if (static_cast<int>(c.a.size()) != n) throw std::invalid_argument("constraint arity mismatch");
    switch (c.rel) {
      case Rel::Le:
        pre.push_back({c.a, c.b, true, +1});
        break;
      case Rel::Ge: {
        RatVec neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -c.a[i];
        pre.push_back({std::move(neg), -c.b, true, +1});
        break;
      }
      case Rel::Eq:
        pre.push_back({c.a, c.b, false, 0});
        break;
    }
  }
  const int m = static_cast<int>(pre.size());
  int slack_count = 0;
  for (const auto& r : pre) slack_count += r.has_slack ? 1 : 0;
  const int struct_cols = cols;
  const int total_cols = struct_cols + slack_count + m;  // + artificials
  const int rhs_col = total_cols;

  // tableau[r] = row of coefficients, last entry rhs; basis[r] = basic column.
  std::vector<RatVec> t(m, RatVec(total_cols + 1, Rational(0)));
  std::vector<int> basis(m, -1);
  int slack_at = struct_cols;
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < n; ++i) {
      t[r][var_col[i]] = pre[r].a[i];
      if (var_negcol[i] >= 0) t[r][var_negcol[i]] = -pre[r].a[i];
    }
    t[r][rhs_col] = pre[r].b;
    int my_slack = -1;
    if (pre[r].has_slack) {
      my_slack = slack_at++;
      t[r][my_slack] = 1;
    }
    if (t[r][rhs_col] < 0) {
      for (auto& v : t[r]) v = -v;
    }
    const int art = struct_cols + slack_count + r;
    t[r][art] = 1;
    basis[r] = art;
  }

  // Phase-1 objective: minimize the sum of artificials. Reduced-cost row is
  // the negated sum of the constraint rows over non-artificial columns.
  RatVec obj(total_cols + 1, Rational(0));
  for (int r = 0; r < m; ++r) {
    for (int cidx = 0; cidx <= total_cols; ++cidx) obj[cidx] -= t[r][cidx];
  }
  for (int r = 0; r < m; ++r) obj[struct_cols + slack_count + r] = 0;

  auto pivot = [&](int prow, int pcol) {
    const Rational piv = t[prow][pcol];
    for (auto& v : t[prow]) v /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == prow || t[r][pcol] == 0) continue;
      const Rational factor = t[r][pcol];
      for (int cidx = 0; cidx <= total_cols; ++cidx) t[r][cidx] -= factor * t[prow][cidx];
    }
    if (obj[pcol] != 0) {
      const Rational factor = obj[pcol];
      for (int cidx = 0; cidx <= total_cols; ++cidx) obj[cidx] -= factor * t[prow][cidx];
    }
    basis[prow] = pcol;
  };

  while (true) {
    // Bland's rule: smallest-index entering column with negative reduced cost.
    int enter = -1;
    for (int cidx = 0; cidx < total_cols; ++cidx) {
      if (obj[cidx] < 0) {
        enter = cidx;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int r = 0; r < m; ++r) {
      if (t[r][enter] > 0) {
        Rational ratio = t[r][rhs_col] / t[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) {
      // Phase-1 objective is bounded below by 0; unboundedness cannot occur.
      throw std::logic_error("simplex_phase1: unbounded phase-1 objective");
    }
    pivot(leave, enter);
  }

  Rational artificial_sum(0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= struct_cols + slack_count) artificial_sum += t[r][rhs_col];
  }
  if (artificial_sum != 0) return {false, {}};

  RatVec col_value(total_cols, Rational(0));
  for (int r = 0; r < m; ++r) col_value[basis[r]] = t[r][rhs_col];
  RatVec x(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    x[i] = col_value[var_col[i]];
    if (var_negcol[i] >= 0) x[i] -= col_value[var_negcol[i]];
  }
  return {true, std::move(x)};
}

FeasibilityResult solve_feasibility(const FeasibilityProblem& problem) {
  if (problem.num_vars <= 12) {
    auto fm = fourier_motzkin(problem);
    if (fm.has_value()) return *fm;
  }
  return simplex_phase1(problem);
}

bool satisfies_all(const RatVec& x, const std::vector<LinConstraint>& constraints) {
  for (const auto& c : constraints) {
    Rational lhs(0);
    for (size_t i = 0; i < c.a.size(); ++i) lhs += c.a[i] * x[i];
    switch (c.rel) {
      case Rel::Le:
        if (lhs > c.b) return false;
        break;
      case Rel::Ge:
        if (lhs < c.b) return false;
        break;
      case Rel::Eq:
        if (lhs != c.b) return false;
        break;
    }
  }
  return true;
}

LinearSolveResult solve_linear_system(const RatMat& A, const RatVec& b) {
  const int m = static_cast<int>(A.size());
  const int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("rhs length mismatch");

  RatMat t(m, RatVec(n + 1));
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(A[r].size()) != n) throw std::invalid_argument("ragged matrix");
    for (int c = 0; c < n; ++c) t[r][c] = A[r][c];
    t[r][n] = b[r];
  }

  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int pr = -1;
    for (int r = row; r < m; ++r) {
      if (t[r][col] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(t[row], t[pr]);
    const Rational piv = t[row][col];
    for (int c = col; c <= n; ++c) t[row][c] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == row || t[r][col] == 0) continue;
      const Rational factor = t[r][col];
      for (int c = col; c <= n; ++c) t[r][c] -= factor * t[row][c];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (int r = row; r < m; ++r) {
    if (t[r][n] != 0) return {SolveStatus::Inconsistent, {}};
  }
  if (static_cast<int>(pivot_col_of_row.size()) < n) return {SolveStatus::Underdetermined, {}};

  RatVec x(n);
  for (int r = 0; r < n; ++r) x[pivot_col_of_row[r]] = t[r][n];
  return {SolveStatus::Unique, std::move(x)};
}

}  // namespace nashkit
