#include "nashkit/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace nashkit {

MixedStrategy::MixedStrategy(RatVec probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty mixed strategy");
  Rational sum(0);
  for (const auto& p : probs_) {
    if (p < 0) throw std::invalid_argument("negative probability in mixed strategy");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("mixed strategy does not sum to 1");
}

MixedStrategy MixedStrategy::pure(int n, int index) {
  if (index < 0 || index >= n) throw std::invalid_argument("pure strategy index out of range");
  RatVec v(n, Rational(0));
  v[index] = 1;
  return MixedStrategy(std::move(v));
}

MixedStrategy MixedStrategy::uniform(int n) {
  RatVec v(n, make_rational(1, n));
  return MixedStrategy(std::move(v));
}

MixedStrategy MixedStrategy::uniform_on(int n, const IndexSet& support) {
  if (support.empty()) throw std::invalid_argument("uniform_on: empty support");
  RatVec v(n, Rational(0));
  const Rational w = make_rational(1, static_cast<long>(support.size()));
  for (int i : support) {
    if (i < 0 || i >= n) throw std::invalid_argument("uniform_on: index out of range");
    v[i] = w;
  }
  return MixedStrategy(std::move(v));
}

IndexSet MixedStrategy::support() const {
  IndexSet s;
  for (int i = 0; i < size(); ++i) {
    if (probs_[i] > 0) s.push_back(i);
  }
  return s;
}

BimatrixGame::BimatrixGame(RatMat row_payoffs, RatMat col_payoffs, Rational bound)
    : R_(std::move(row_payoffs)), C_(std::move(col_payoffs)), bound_(std::move(bound)) {
  n_rows_ = static_cast<int>(R_.size());
  if (n_rows_ == 0) throw std::invalid_argument("game with no rows");
  n_cols_ = static_cast<int>(R_[0].size());
  if (n_cols_ == 0) throw std::invalid_argument("game with no columns");
  if (C_.size() != R_.size()) throw std::invalid_argument("R and C row counts differ");
  for (int i = 0; i < n_rows_; ++i) {
    if (static_cast<int>(R_[i].size()) != n_cols_ || static_cast<int>(C_[i].size()) != n_cols_) {
      throw std::invalid_argument("ragged payoff matrix");
    }
    for (int j = 0; j < n_cols_; ++j) {
      if (abs(R_[i][j]) > bound_ || abs(C_[i][j]) > bound_) {
        throw std::invalid_argument("payoff entry outside declared bound");
      }
    }
  }
}

Rational BimatrixGame::row_payoff(int i, const MixedStrategy& y) const {
  Rational v(0);
  for (int j = 0; j < n_cols_; ++j) {
    if (y[j] != 0) v += R_[i][j] * y[j];
  }
  return v;
}

Rational BimatrixGame::col_payoff(int j, const MixedStrategy& x) const {
  Rational v(0);
  for (int i = 0; i < n_rows_; ++i) {
    if (x[i] != 0) v += C_[i][j] * x[i];
  }
  return v;
}

void BimatrixGame::check_profile(const StrategyProfile& p) const {
  if (p.x.size() != n_rows_ || p.y.size() != n_cols_) {
    throw std::invalid_argument("profile dimensions do not match game");
  }
}

std::pair<Rational, Rational> payoffs(const BimatrixGame& game, const StrategyProfile& profile) {
  game.check_profile(profile);
  Rational pr(0), pc(0);
  for (int i = 0; i < game.n_rows(); ++i) {
    if (profile.x[i] == 0) continue;
    for (int j = 0; j < game.n_cols(); ++j) {
      if (profile.y[j] == 0) continue;
      const Rational m = profile.x[i] * profile.y[j];
      pr += m * game.R()[i][j];
      pc += m * game.C()[i][j];
    }
  }
  return {pr, pc};
}

namespace {

Rational best_row_value(const BimatrixGame& game, const MixedStrategy& y) {
  Rational best = game.row_payoff(0, y);
  for (int i = 1; i < game.n_rows(); ++i) {
    Rational v = game.row_payoff(i, y);
    if (v > best) best = v;
  }
  return best;
}

Rational best_col_value(const BimatrixGame& game, const MixedStrategy& x) {
  Rational best = game.col_payoff(0, x);
  for (int j = 1; j < game.n_cols(); ++j) {
    Rational v = game.col_payoff(j, x);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

std::pair<Rational, Rational> regrets(const BimatrixGame& game, const StrategyProfile& profile) {
  auto [pr, pc] = payoffs(game, profile);
  return {best_row_value(game, profile.y) - pr, best_col_value(game, profile.x) - pc};
}

bool is_eps_ne(const BimatrixGame& game, const StrategyProfile& profile, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  auto [rr, cr] = regrets(game, profile);
  return rr <= eps && cr <= eps;
}

std::pair<IndexSet, IndexSet> eps_br_sets(const BimatrixGame& game,
                                          const StrategyProfile& profile,
                                          const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  game.check_profile(profile);
  IndexSet rows, cols;
  const Rational row_best = best_row_value(game, profile.y);
  for (int i = 0; i < game.n_rows(); ++i) {
    if (game.row_payoff(i, profile.y) >= row_best - eps) rows.push_back(i);
  }
  const Rational col_best = best_col_value(game, profile.x);
  for (int j = 0; j < game.n_cols(); ++j) {
    if (game.col_payoff(j, profile.x) >= col_best - eps) cols.push_back(j);
  }
  return {rows, cols};
}

bool is_eps_wne(const BimatrixGame& game, const StrategyProfile& profile, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  game.check_profile(profile);
  const Rational row_best = best_row_value(game, profile.y);
  for (int i = 0; i < game.n_rows(); ++i) {
    if (profile.x[i] > 0 && game.row_payoff(i, profile.y) < row_best - eps) return false;
  }
  const Rational col_best = best_col_value(game, profile.x);
  for (int j = 0; j < game.n_cols(); ++j) {
    if (profile.y[j] > 0 && game.col_payoff(j, profile.x) < col_best - eps) return false;
  }
  return true;
}

namespace {

MixedStrategy redistribute(const MixedStrategy& s, const IndexSet& br) {
  RatVec out(s.size(), Rational(0));
  Rational moved(0);
  std::vector<bool> in_br(s.size(), false);
  for (int i : br) in_br[i] = true;
  for (int i = 0; i < s.size(); ++i) {
    if (in_br[i]) {
      out[i] = s[i];
    } else {
      moved += s[i];
    }
  }
  const Rational share = moved / static_cast<long>(br.size());
  for (int i : br) out[i] += share;
  return MixedStrategy(std::move(out));
}

}  // namespace

StrategyProfile wne_from_ne(const BimatrixGame& game, const StrategyProfile& profile,
                            const Rational& eps) {
  if (!entries_within(game, Rational(0), Rational(1))) {
    throw std::invalid_argument("wne_from_ne requires payoffs in [0,1]; rescale first");
  }
  if (!is_eps_ne(game, profile, eps)) {
    throw std::invalid_argument("wne_from_ne: profile is not an eps-NE");
  }
  const Rational r = sqrt_upper_bound(eps);
  auto [row_br, col_br] = eps_br_sets(game, profile, r);
  return {redistribute(profile.x, row_br), redistribute(profile.y, col_br)};
}

BimatrixGame rescale(const BimatrixGame& game, const Rational& shift, const Rational& scale) {
  if (scale <= 0) throw std::invalid_argument("rescale: scale must be positive");
  RatMat R = game.R(), C = game.C();
  Rational new_bound(0);
  for (int i = 0; i < game.n_rows(); ++i) {
    for (int j = 0; j < game.n_cols(); ++j) {
      R[i][j] = (R[i][j] + shift) * scale;
      C[i][j] = (C[i][j] + shift) * scale;
      new_bound = std::max(new_bound, std::max(abs(R[i][j]), abs(C[i][j])));
    }
  }
  return BimatrixGame(std::move(R), std::move(C), new_bound);
}

bool is_correlated_equilibrium(const BimatrixGame& game, const RatMat& joint) {
  const int n = game.n_rows(), m = game.n_cols();
  if (static_cast<int>(joint.size()) != n) throw std::invalid_argument("joint shape mismatch");
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(joint[i].size()) != m) throw std::invalid_argument("joint shape mismatch");
    for (int j = 0; j < m; ++j) {
      if (joint[i][j] < 0) throw std::invalid_argument("joint distribution has negative mass");
      total += joint[i][j];
    }
  }
  if (total != 1) throw std::invalid_argument("joint distribution does not sum to 1");

  for (int i = 0; i < n; ++i) {
    for (int dev = 0; dev < n; ++dev) {
      Rational lhs(0), rhs(0);
      for (int j = 0; j < m; ++j) {
        lhs += game.R()[i][j] * joint[i][j];
        rhs += game.R()[dev][j] * joint[i][j];
      }
      if (lhs < rhs) return false;
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int dev = 0; dev < m; ++dev) {
      Rational lhs(0), rhs(0);
      for (int i = 0; i < n; ++i) {
        lhs += game.C()[i][j] * joint[i][j];
        rhs += game.C()[i][dev] * joint[i][j];
      }
      if (lhs < rhs) return false;
    }
  }
  return true;
}

EquilibriumReport equilibrium_report(const BimatrixGame& game, const StrategyProfile& profile) {
  EquilibriumReport rep;
  auto [pr, pc] = payoffs(game, profile);
  rep.row_payoff = pr;
  rep.col_payoff = pc;
  auto [rr, cr] = regrets(game, profile);
  rep.row_regret = rr;
  rep.col_regret = cr;
  rep.row_support = profile.x.support();
  rep.col_support = profile.y.support();

  const Rational row_best = best_row_value(game, profile.y);
  Rational rslack(0);
  for (int i : rep.row_support) rslack = std::max(rslack, Rational(row_best - game.row_payoff(i, profile.y)));
  const Rational col_best = best_col_value(game, profile.x);
  Rational cslack(0);
  for (int j : rep.col_support) cslack = std::max(cslack, Rational(col_best - game.col_payoff(j, profile.x)));
  rep.row_wne_slack = rslack;
  rep.col_wne_slack = cslack;
  return rep;
}

bool entries_within(const BimatrixGame& game, const Rational& lo, const Rational& hi) {
  for (int i = 0; i < game.n_rows(); ++i) {
    for (int j = 0; j < game.n_cols(); ++j) {
      if (game.R()[i][j] < lo || game.R()[i][j] > hi) return false;
      if (game.C()[i][j] < lo || game.C()[i][j] > hi) return false;
    }
  }
  return true;
}

}  // namespace nashkit
