#include "nashkit/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "nashkit/equilibria.hpp"

namespace nashkit {

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  edges_.insert({std::min(u, v), std::max(u, v)});
}

bool Graph::has_edge(int u, int v) const {
  return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (!has_edge(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

bool Graph::is_independent_set(const IndexSet& vertices) const {
  for (size_t a = 0; a < vertices.size(); ++a) {
    for (size_t b = a + 1; b < vertices.size(); ++b) {
      if (has_edge(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

bool Graph::is_clique(const IndexSet& vertices) const {
  for (size_t a = 0; a < vertices.size(); ++a) {
    for (size_t b = a + 1; b < vertices.size(); ++b) {
      if (!has_edge(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

namespace {

// Visits the k-subsets of [n] in colexicographic order as sorted index
// vectors; stops early when the visitor returns true.
void scan_subsets_colex(int n, int k, const std::function<bool(const IndexSet&)>& visit) {
  if (k <= 0 || k > n) return;
  IndexSet cur(k);
  // cur[pos] is filled from the largest position down; values ascend, which
  // yields colex order overall.
  std::function<bool(int, int)> rec = [&](int pos, int limit) -> bool {
    for (int v = pos; v < limit; ++v) {
      cur[pos] = v;
      if (pos == 0) {
        if (visit(cur)) return true;
      } else if (rec(pos - 1, v)) {
        return true;
      }
    }
    return false;
  };
  rec(k - 1, n);
}

void validate_index_set(const IndexSet& s, int n, const char* what) {
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument(std::string(what) + ": indices must be strictly increasing");
  }
  if (!s.empty() && (s.front() < 0 || s.back() >= n)) {
    throw std::invalid_argument(std::string(what) + ": index out of range");
  }
}

}  // namespace

bool Graph::has_independent_set(int k) const { return find_independent_set(k).has_value(); }

bool Graph::has_clique(int k) const { return complement().find_independent_set(k).has_value(); }

std::optional<IndexSet> Graph::find_independent_set(int k) const {
  if (k <= 0 || k > n_) return std::nullopt;
  std::optional<IndexSet> found;
  scan_subsets_colex(n_, k, [&](const IndexSet& s) {
    if (is_independent_set(s)) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

Rational uniform_l1_distance(int ground, const IndexSet& a, const IndexSet& b) {
  RatVec va(ground, Rational(0)), vb(ground, Rational(0));
  for (int i : a) va[i] = make_rational(1, static_cast<long>(a.size()));
  for (int i : b) vb[i] = make_rational(1, static_cast<long>(b.size()));
  return l1_distance(va, vb);
}

namespace {

std::optional<Rational> exact_pairwise_min(int ground, const std::vector<IndexSet>& sets) {
  if (sets.size() < 2) return std::nullopt;
  std::optional<Rational> best;
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      Rational d = uniform_l1_distance(ground, sets[i], sets[j]);
      if (!best || d < *best) best = d;
    }
  }
  return best;
}

}  // namespace

SubsetFamily subset_family_all(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("subset_family_all: n outside [1,20]");
  SubsetFamily fam;
  fam.ground = n;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    IndexSet s;
    for (int b = 0; b < n; ++b) {
      if (mask & (1u << b)) s.push_back(b);
    }
    fam.sets.push_back(std::move(s));
  }
  if (fam.sets.size() <= 2048) {
    fam.min_l1 = exact_pairwise_min(n, fam.sets);
  } else {
    fam.min_l1 = make_rational(1, n);  // certified lower bound; too many pairs to scan
  }
  return fam;
}

SubsetFamily subset_family_greedy(int n, int l, const Rational& min_distance) {
  if (l < 1 || l > n) throw std::invalid_argument("subset_family_greedy: need 1 <= l <= n");
  if (n > 20) throw std::invalid_argument("subset_family_greedy: n out of range");
  SubsetFamily fam;
  fam.ground = n;
  scan_subsets_colex(n, l, [&](const IndexSet& s) {
    for (const auto& prev : fam.sets) {
      if (uniform_l1_distance(n, prev, s) < min_distance) return false;
    }
    fam.sets.push_back(s);
    return false;
  });
  fam.min_l1 = exact_pairwise_min(n, fam.sets);
  return fam;
}

namespace {

RatMat transpose(const RatMat& m) {
  RatMat t(m[0].size(), RatVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i) {
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

const Rational kGamma = Rational(1) / 2;

}  // namespace

BimatrixGame is_game(const Graph& graph, int k) {
  const int n = graph.n();
  if (k < 1 || k > n) throw std::invalid_argument("is_game: k out of range");
  const Rational M(2);  // any M >= 1 preserves the construction; fixed at 2
  const int size = 2 * n + 1;
  RatMat R(size, RatVec(size, Rational(0)));

  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) {
        R[u][v] = 1 + kGamma;
      } else {
        R[u][v] = graph.has_edge(u, v) ? Rational(0) : Rational(1);
      }
    }
    R[u][n + u] = -M;
    R[u][2 * n] = -1;
  }
  for (int u = 0; u < n; ++u) {
    R[n + u][u] = k + kGamma;
    R[n + u][2 * n] = -1;
  }
  const Rational border = 1 + kGamma / k;
  for (int j = 0; j < 2 * n; ++j) R[2 * n][j] = border;
  R[2 * n][2 * n] = 1;

  const Rational bound = std::max(Rational(k + kGamma), Rational(2));
  RatMat C = transpose(R);
  return BimatrixGame(std::move(R), std::move(C), bound);
}

BimatrixGame is_game_scaled(const Graph& graph, int k) {
  return rescale(is_game(graph, k), Rational(0), make_rational(1, k));
}

BimatrixGame clique_game(const Graph& graph, int k, const Rational& delta, const Rational& M) {
  const int n = graph.n();
  if (k < 1 || k > n) throw std::invalid_argument("clique_game: k out of range");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("clique_game: delta outside (0,1)");
  if (M <= 1) throw std::invalid_argument("clique_game: M must exceed 1");
  const int size = 2 * n + 1;
  RatMat R(size, RatVec(size, Rational(0)));

  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) {
        R[u][v] = 1 + delta;
      } else {
        R[u][v] = graph.has_edge(u, v) ? Rational(1) : Rational(0);
      }
    }
    R[u][n + u] = -M;
    R[u][2 * n] = -M;
  }
  for (int u = 0; u < n; ++u) {
    R[n + u][u] = k;
    R[n + u][2 * n] = -M;
  }
  const Rational border = 1 + delta / k;
  for (int j = 0; j < 2 * n; ++j) R[2 * n][j] = border;
  R[2 * n][2 * n] = border;

  const Rational bound = std::max({M, Rational(k), Rational(1 + delta)});
  RatMat C = transpose(R);
  return BimatrixGame(std::move(R), std::move(C), bound);
}

BimatrixGame gmp_game(int m) {
  if (m < 2) throw std::invalid_argument("gmp_game: need at least two strategies");
  RatMat R(m, RatVec(m, Rational(0))), C(m, RatVec(m, Rational(0)));
  for (int i = 0; i < m; ++i) {
    R[i][i] = 1;
    C[i][i] = -1;
  }
  return BimatrixGame(std::move(R), std::move(C), Rational(1));
}

BimatrixGame exp_good_game(int n, const IndexSet& S) {
  if (S.empty()) throw std::invalid_argument("exp_good_game: empty subset");
  validate_index_set(S, n, "exp_good_game");
  std::vector<bool> in(n, false);
  for (int i : S) in[i] = true;

  RatMat R(n, RatVec(n)), C(n, RatVec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational r, c;
      if (!in[i]) {
        r = -1;  // dummy rows
      } else if (in[j]) {
        r = (i == j) ? 2 : 1;  // matching-pennies block, shifted by +1
      } else {
        r = 1;
      }
      if (!in[j]) {
        c = -1;  // dummy columns
      } else if (in[i]) {
        c = (i == j) ? 2 : 3;  // -I + 3 on the block
      } else {
        c = 2;
      }
      R[i][j] = r / 2;
      C[i][j] = c / 3;
    }
  }
  return BimatrixGame(std::move(R), std::move(C), Rational(1));
}

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

BimatrixGame dp_game(int l, const IndexSet& S) {
  if (l < 2 || l % 2 != 0) throw std::invalid_argument("dp_game: l must be even and >= 2");
  const long n_long = binomial(l, l / 2);
  if (n_long > 4096) throw std::invalid_argument("dp_game: l too large");
  const int n = static_cast<int>(n_long);
  if (static_cast<int>(S.size()) != l) throw std::invalid_argument("dp_game: |S| must equal l");
  validate_index_set(S, n, "dp_game");
  std::vector<bool> in(n, false);
  for (int i : S) in[i] = true;

  // Columns are the (l/2)-subsets of S in colex order.
  std::vector<IndexSet> columns;
  scan_subsets_colex(l, l / 2, [&](const IndexSet& positions) {
    IndexSet actual;
    actual.reserve(positions.size());
    for (int p : positions) actual.push_back(S[p]);
    columns.push_back(std::move(actual));
    return false;
  });
  if (static_cast<int>(columns.size()) != n) throw std::logic_error("dp_game: column count mismatch");

  RatMat A(n, RatVec(n)), B(n, RatVec(n));
  for (int j = 0; j < n; ++j) {
    std::vector<bool> in_col(n, false);
    for (int i : columns[j]) in_col[i] = true;
    for (int i = 0; i < n; ++i) {
      if (!in[i]) {
        A[i][j] = -1;
        B[i][j] = 1;
      } else if (in_col[i]) {
        A[i][j] = 1;
        B[i][j] = 0;
      } else {
        A[i][j] = 0;
        B[i][j] = 1;
      }
    }
  }
  return BimatrixGame(std::move(A), std::move(B), Rational(1));
}

BimatrixGame const_good_game(int l, const IndexSet& S) {
  const BimatrixGame dp = dp_game(l, S);
  const int n = dp.n_rows();
  const auto& A = dp.R();
  const auto& B = dp.C();

  // Mirrored two-block assembly: the lower-right block plays the same game
  // with the players' roles switched.
  RatMat R(2 * n, RatVec(2 * n)), C(2 * n, RatVec(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      R[i][j] = 2 + A[i][j];
      R[i][n + j] = -2;
      R[n + i][j] = -2;
      R[n + i][n + j] = 2 + B[j][i];
      C[i][j] = -2 + B[i][j];
      C[i][n + j] = 2;
      C[n + i][j] = 2;
      C[n + i][n + j] = -2 + A[j][i];
    }
  }

  // Normalize to [-1,1] and swap the column player's halves (a renaming of
  // her strategies).
  RatMat Rn(2 * n, RatVec(2 * n)), Cn(2 * n, RatVec(2 * n));
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rn[i][j] = (R[i][n + j] + 3) / 6;
      Rn[i][n + j] = (R[i][j] + 3) / 6;
      Cn[i][j] = (C[i][n + j] + 3) / 6;
      Cn[i][n + j] = (C[i][j] + 3) / 6;
    }
  }
  return BimatrixGame(std::move(Rn), std::move(Cn), Rational(1));
}

BimatrixGame stitch(const BimatrixGame& nice, const BimatrixGame& good, const Rational& delta) {
  if (delta <= 0 || delta > make_rational(1, 2)) {
    throw std::invalid_argument("stitch: delta outside (0, 1/2]");
  }
  // The scaled IS game's k*I block sits at 1 + gamma/k, slightly above 1, so
  // accept components up to 3/2; the stitched frame constants stay at +-2.
  if (nice.bound() > make_rational(3, 2) || good.bound() > 1) {
    throw std::invalid_argument("stitch: component bounds mismatched with the block frame");
  }
  if (nice.n_rows() != nice.n_cols() || good.n_rows() != good.n_cols()) {
    throw std::invalid_argument("stitch: components must be square");
  }
  const int N = nice.n_rows(), K = good.n_rows();
  const int size = N + K;
  RatMat R(size, RatVec(size)), C(size, RatVec(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (i < N && j < N) {
        R[i][j] = nice.R()[i][j];
        C[i][j] = nice.C()[i][j];
      } else if (i < N) {
        R[i][j] = -2;
        C[i][j] = delta;
      } else if (j < N) {
        R[i][j] = delta;
        C[i][j] = -2;
      } else {
        R[i][j] = good.R()[i - N][j - N];
        C[i][j] = good.C()[i - N][j - N];
      }
    }
  }
  return BimatrixGame(std::move(R), std::move(C), Rational(2));
}

namespace {

StrategyProfile pad_profile(const StrategyProfile& p, int front_zeros, int back_zeros) {
  auto pad = [&](const MixedStrategy& s) {
    RatVec v(front_zeros, Rational(0));
    for (int i = 0; i < s.size(); ++i) v.push_back(s[i]);
    v.insert(v.end(), back_zeros, Rational(0));
    return MixedStrategy(std::move(v));
  };
  return {pad(p.x), pad(p.y)};
}

// Exact equilibrium of const_good_game after the column swap: first half
// uniform-on-S, second half uniform over everything, each carrying mass 1/2.
StrategyProfile const_good_canonical(int n, const IndexSet& S) {
  RatVec v(2 * n, Rational(0));
  const Rational on_s = make_rational(1, 2 * static_cast<long>(S.size()));
  for (int i : S) v[i] = on_s;
  const Rational everywhere = make_rational(1, 2 * static_cast<long>(n));
  for (int i = 0; i < n; ++i) v[n + i] += everywhere;
  MixedStrategy s(std::move(v));
  return {s, s};
}

}  // namespace

bool nice_soundness_check(const BimatrixGame& nice, const Rational& delta) {
  return max_welfare_ne(nice).welfare < 2 * delta;
}

GameFamily build_hard_family(const FamilyConfig& config) {
  GameFamily fam;

  BimatrixGame nice = config.nice_override.value_or(is_game_scaled(config.graph, config.k));
  StrategyProfile nice_witness = [&]() -> StrategyProfile {
    if (config.nice_witness_override) return *config.nice_witness_override;
    if (config.nice_override) {
      throw std::invalid_argument("build_hard_family: nice_override requires nice_witness_override");
    }
    auto planted = config.graph.find_independent_set(config.k);
    if (!planted) {
      throw std::invalid_argument("build_hard_family: graph has no independent set of size k");
    }
    MixedStrategy s = MixedStrategy::uniform_on(2 * config.graph.n() + 1, *planted);
    return {s, s};
  }();

  if (!verification_oracle(nice, nice_witness, Rational(0)).accepted()) {
    throw std::invalid_argument("build_hard_family: witness is not an exact NE of the nice game");
  }
  auto [wp1, wp2] = payoffs(nice, nice_witness);
  const Rational delta = std::min(wp1, wp2);
  if (delta <= 0 || delta > make_rational(1, 2)) {
    throw std::invalid_argument(
        "build_hard_family: witnessed payoff outside (0, 1/2]; pick k >= 3 for the IS component");
  }
  fam.delta = delta;

  const int N = nice.n_rows();
  int K = 0;
  std::vector<BimatrixGame> goods;
  if (config.kind == FamilyKind::Exp) {
    K = config.K;
    fam.index_sets = subset_family_all(K);
    fam.eps = make_rational(1, 60L * K * K);
    fam.tau = 3 * K;
    fam.c = 1;
    for (const auto& S : fam.index_sets.sets) goods.push_back(exp_good_game(K, S));
  } else {
    const int l = config.l;
    fam.eps = make_rational(1, 100000);
    fam.tau = 102;
    fam.c = make_rational(1, 2);
    const Rational md = config.min_distance.value_or(
        Rational(Rational(18) / fam.c * (fam.tau + 1) * fam.eps));
    const int ground = static_cast<int>(binomial(l, l / 2));
    fam.index_sets = subset_family_greedy(ground, l, md);
    K = 2 * ground;
    for (const auto& S : fam.index_sets.sets) goods.push_back(const_good_game(l, S));
  }

  fam.shared_witness = pad_profile(nice_witness, 0, K);
  for (size_t g = 0; g < goods.size(); ++g) {
    BimatrixGame member = stitch(nice, goods[g], delta);
    if (!verification_oracle(member, fam.shared_witness, Rational(0)).accepted()) {
      throw std::logic_error("build_hard_family: witness rejected by a member (construction bug)");
    }
    StrategyProfile good_ne = [&]() -> StrategyProfile {
      if (config.kind == FamilyKind::Exp) {
        MixedStrategy s = MixedStrategy::uniform_on(K, fam.index_sets.sets[g]);
        return {s, s};
      }
      return const_good_canonical(K / 2, fam.index_sets.sets[g]);
    }();
    StrategyProfile canonical = pad_profile(good_ne, N, 0);
    if (!verification_oracle(member, canonical, Rational(0)).accepted()) {
      throw std::logic_error("build_hard_family: canonical member NE fails (construction bug)");
    }
    fam.games.push_back(std::move(member));
    fam.canonical.push_back(std::move(canonical));
  }
  return fam;
}

}  // namespace nashkit
