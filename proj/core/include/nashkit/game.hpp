#pragma once

#include <utility>
#include <vector>

#include "nashkit/rational.hpp"

namespace nashkit {

using IndexSet = std::vector<int>;  // strictly increasing, 0-based

/// A point of the simplex: nonnegative exact rationals summing to exactly 1.
/// Degenerate vectors (empty, negative entries, wrong sum) are rejected at
/// construction, never normalized.
class MixedStrategy {
 public:
  /// Trivial single-strategy simplex; placeholder meant to be assigned over.
  MixedStrategy() : probs_{Rational(1)} {}
  explicit MixedStrategy(RatVec probs);

  static MixedStrategy pure(int n, int index);
  static MixedStrategy uniform(int n);
  static MixedStrategy uniform_on(int n, const IndexSet& support);

  int size() const { return static_cast<int>(probs_.size()); }
  const RatVec& probs() const { return probs_; }
  const Rational& operator[](int i) const { return probs_[i]; }
  IndexSet support() const;

  bool operator==(const MixedStrategy& other) const { return probs_ == other.probs_; }

 private:
  RatVec probs_;
};

struct StrategyProfile {
  MixedStrategy x;
  MixedStrategy y;

  bool operator==(const StrategyProfile& other) const {
    return x == other.x && y == other.y;
  }
};

/// Two payoff matrices of identical shape with every entry in [-bound, bound].
class BimatrixGame {
 public:
  BimatrixGame(RatMat row_payoffs, RatMat col_payoffs, Rational bound);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  const RatMat& R() const { return R_; }
  const RatMat& C() const { return C_; }
  const Rational& bound() const { return bound_; }

  /// Payoff of pure row i against y, i.e. e_i^T R y.
  Rational row_payoff(int i, const MixedStrategy& y) const;
  /// Payoff of pure column j against x, i.e. x^T C e_j.
  Rational col_payoff(int j, const MixedStrategy& x) const;

  void check_profile(const StrategyProfile& p) const;

 private:
  int n_rows_, n_cols_;
  RatMat R_, C_;
  Rational bound_;
};

struct EquilibriumReport {
  Rational row_payoff, col_payoff;
  Rational row_regret, col_regret;
  IndexSet row_support, col_support;
  Rational row_wne_slack, col_wne_slack;
};

/// (x^T R y, x^T C y).
std::pair<Rational, Rational> payoffs(const BimatrixGame& game, const StrategyProfile& profile);

/// Max pure-deviation gains (max_i e_i^T R y - x^T R y, and the column
/// analogue); both nonnegative.
std::pair<Rational, Rational> regrets(const BimatrixGame& game, const StrategyProfile& profile);

bool is_eps_ne(const BimatrixGame& game, const StrategyProfile& profile, const Rational& eps);

/// eps-best-response index sets for rows (against y) and columns (against x).
std::pair<IndexSet, IndexSet> eps_br_sets(const BimatrixGame& game,
                                          const StrategyProfile& profile,
                                          const Rational& eps);

/// Well-supported test: every supported pure strategy is an eps-best response.
bool is_eps_wne(const BimatrixGame& game, const StrategyProfile& profile, const Rational& eps);

/// Turns an eps-NE of a [0,1]-payoff game into a 3r-WNE, where r is the binary
/// over-approximation of sqrt(eps) from sqrt_upper_bound. Mass off the r-best
/// response set is removed and spread uniformly over it. Requires payoffs in
/// [0,1] (rescale first) and an input profile that actually is an eps-NE.
StrategyProfile wne_from_ne(const BimatrixGame& game, const StrategyProfile& profile,
                            const Rational& eps);

/// Entry map e -> (e + shift) * scale, scale > 0. Preserves best-response
/// sets; eps-NEs map to (eps*scale)-NEs.
BimatrixGame rescale(const BimatrixGame& game, const Rational& shift, const Rational& scale);

/// Complementary-slackness conditions for a joint distribution over pure
/// strategy pairs.
bool is_correlated_equilibrium(const BimatrixGame& game, const RatMat& joint);

EquilibriumReport equilibrium_report(const BimatrixGame& game, const StrategyProfile& profile);

bool entries_within(const BimatrixGame& game, const Rational& lo, const Rational& hi);

}  // namespace nashkit
