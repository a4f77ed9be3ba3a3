#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nashkit/game.hpp"

namespace nashkit {

class Graph {
 public:
  explicit Graph(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  }

  int n() const { return n_; }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  Graph complement() const;
  bool is_independent_set(const IndexSet& vertices) const;
  bool is_clique(const IndexSet& vertices) const;
  bool has_independent_set(int k) const;
  bool has_clique(int k) const;
  /// First k-independent set in colexicographic order, if any.
  std::optional<IndexSet> find_independent_set(int k) const;

 private:
  int n_;
  std::set<std::pair<int, int>> edges_;  // normalized u < v, 0-based
};

struct SubsetFamily {
  int ground = 0;                   // subsets live in [ground]
  std::vector<IndexSet> sets;       // pairwise distinct, colex order
  std::optional<Rational> min_l1;   // nullopt = +infinity (fewer than two sets)
};

/// L1 distance between the uniform distributions on two subsets of [ground].
Rational uniform_l1_distance(int ground, const IndexSet& a, const IndexSet& b);

/// All nonempty subsets of [n] in colex order; min_l1 >= 1/n always holds,
/// and is computed exactly when the family is small enough to scan pairwise.
SubsetFamily subset_family_all(int n);

/// Greedy packing over the l-subsets of [n] in colex order: a set is admitted
/// iff its uniform vector is at L1 distance >= min_distance from every
/// previously admitted one.
SubsetFamily subset_family_greedy(int n, int l, const Rational& min_distance);

/// Independent-set game on (2n+1) strategies per side; gamma = 1/2.
BimatrixGame is_game(const Graph& graph, int k);
/// is_game with all payoffs divided by k (entries in [-1,1]).
BimatrixGame is_game_scaled(const Graph& graph, int k);

/// Clique analogue with the border/corner layout of the clique-to-game
/// reduction; requires delta in (0,1) and M > 1.
BimatrixGame clique_game(const Graph& graph, int k, const Rational& delta, const Rational& M);

/// Generalized matching pennies (I(m), -I(m)).
BimatrixGame gmp_game(int m);

/// n x n game whose only equilibria sit at the uniform distribution on S.
BimatrixGame exp_good_game(int n, const IndexSet& S);

/// The subset-indexed game with columns labeled by the (l/2)-subsets of S in
/// colex order; n = C(l, l/2) and |S| = l.
BimatrixGame dp_game(int l, const IndexSet& S);

/// 2n x 2n two-block assembly of dp_game with both players' roles mirrored,
/// normalized to [-1,1] and with the column halves swapped.
BimatrixGame const_good_game(int l, const IndexSet& S);

/// Block game combining an N x N "nice" game with a K x K subset-indexed
/// "good" game; delta must lie in (0, 1/2] and both inputs in [-1,1].
BimatrixGame stitch(const BimatrixGame& nice, const BimatrixGame& good, const Rational& delta);

struct GameFamily {
  std::vector<BimatrixGame> games;
  SubsetFamily index_sets;
  StrategyProfile shared_witness;             // common exact NE of every member
  std::vector<StrategyProfile> canonical;     // per-member good-block NE
  Rational eps, delta, tau, c;
};

enum class FamilyKind { Exp, Quasipoly };

struct FamilyConfig {
  FamilyKind kind = FamilyKind::Exp;
  // Nice component: IS game on `graph` with planted independent set size `k`.
  // The witnessed payoff 1/k + 1/(2k^2) must stay within (0, 1/2], so k >= 3.
  Graph graph{3};
  int k = 3;
  // Exp kind: good games are exp_good_game over all nonempty subsets of [K].
  int K = 4;
  // Quasipoly kind: const_good_game over a greedy packing of l-subsets.
  int l = 4;
  std::optional<Rational> min_distance;
  // Caller-supplied nice game plus its completeness witness (when overriding
  // the default IS construction). The witness payoff fixes delta.
  std::optional<BimatrixGame> nice_override;
  std::optional<StrategyProfile> nice_witness_override;
};

GameFamily build_hard_family(const FamilyConfig& config);

/// Checkable soundness side of the nice-game definition at eps = 0:
/// the welfare of the best enumerated NE stays below 2 * delta.
bool nice_soundness_check(const BimatrixGame& nice, const Rational& delta);

}  // namespace nashkit
