#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nashkit/game.hpp"
#include "nashkit/pseudo.hpp"
#include "nashkit/rng.hpp"

namespace nashkit {

using Multiset = std::vector<int>;  // sorted, with repetition

/// Number of orderings of the multiset: k! / prod(multiplicity!).
BigInt gamma_coefficient(const Multiset& s);

/// Sorted k-multisets over [n] in colex order.
std::vector<Multiset> all_multisets(int n, int k);

/// Splits a flat (n_rows + n_cols)-dimensional point into a profile,
/// validating both halves as simplex points.
StrategyProfile profile_from_point(const BimatrixGame& game, const RatVec& point);

FinitelySupportedMeasure point_mass_measure(const BimatrixGame& game,
                                            const StrategyProfile& profile);

struct SparseProfile {
  Multiset S, T;
  StrategyProfile profile;  // empirical frequencies / k
};

/// Draws an atom by weight then k iid pure strategies from each side.
/// Requires a true distribution (all weights nonnegative).
SparseProfile sample_sparse_profile(const FinitelySupportedMeasure& mu, const BimatrixGame& game,
                                    int k, CounterRng& rng);

/// Exact law of the sampled (S, T) pair: sum over atoms of
/// w * gamma(S) x^S * gamma(T) y^T. Enumeration-capped.
std::map<std::pair<Multiset, Multiset>, Rational> multiset_law(const FinitelySupportedMeasure& mu,
                                                               const BimatrixGame& game, int k,
                                                               size_t cap = 4000000);

/// Exact value of E[(<w, U_S> - <w, x>)^(2 ell)] for k iid draws from x,
/// computed by an exact moment recursion over the draw count. Requires
/// |w|_inf <= 1.
Rational concentration_statistic(const MixedStrategy& x, const RatVec& w, int k, int ell);

struct FixPayoffsResult {
  FinitelySupportedMeasure measure;
  Rational m_A, m_B;
  unsigned power = 0;  // reweighting exponent that achieved concentration
};

/// Power reweighting w -> w * (pi_A pi_B)^(2e), doubling e from 1 until the
/// centered 2*ell payoff moments drop below eps^(2 ell) * m^(2 ell) on both
/// sides (cap 2^16). Requires nonnegative weights and positive mean payoffs.
FixPayoffsResult fix_payoffs(const FinitelySupportedMeasure& mu, const BimatrixGame& game, int ell,
                             const Rational& eps);

struct RoundingReport {
  int trials = 0;
  Rational eps;
  int k = 0;
  double success_rate = 0.0;       // fraction of trials that are eps-NE
  double payoff_floor_rate = 0.0;  // fraction with both payoffs >= m - eps
  Rational m_A, m_B;
};

struct RoundingTrial {
  Multiset S, T;
  Rational row_payoff, col_payoff, row_regret, col_regret;
  bool eps_ne = false;
  bool payoff_floor = false;
};

/// ceil(2 ln(n) / eps^2), floored at 1.
int default_sparsity(int n, const Rational& eps);

/// Runs fix_payoffs, then `trials` seeded sparse-sampling roundings at the
/// given k (0 picks the default sparsity), checking each trial exactly.
RoundingReport rounding_experiment(const FinitelySupportedMeasure& mu, const BimatrixGame& game,
                                   const Rational& eps, int k, int trials, uint64_t seed,
                                   std::vector<RoundingTrial>* trials_out = nullptr);

}  // namespace nashkit
