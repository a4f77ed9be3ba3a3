#include "nashkit/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nashkit {

BigInt gamma_coefficient(const Multiset& s) {
  if (s.empty()) throw std::invalid_argument("gamma_coefficient: empty multiset");
  if (!std::is_sorted(s.begin(), s.end())) {
    throw std::invalid_argument("gamma_coefficient: multiset must be sorted");
  }
  BigInt num;
  mpz_fac_ui(num.get_mpz_t(), s.size());
  BigInt den(1);
  size_t run = 1;
  for (size_t i = 1; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == s[i - 1]) {
      ++run;
    } else {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), run);
      den *= f;
      run = 1;
    }
  }
  return num / den;
}

namespace {

void multiset_rec(int n, int k, int start, Multiset& cur, std::vector<Multiset>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    cur.push_back(v);
    multiset_rec(n, k, v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Multiset> all_multisets(int n, int k) {
  std::vector<Multiset> out;
  Multiset cur;
  multiset_rec(n, k, 0, cur, out);
  return out;
}

StrategyProfile profile_from_point(const BimatrixGame& game, const RatVec& point) {
  const int n = game.n_rows(), m = game.n_cols();
  if (static_cast<int>(point.size()) != n + m) {
    throw std::invalid_argument("point dimension must be n_rows + n_cols");
  }
  RatVec x(point.begin(), point.begin() + n);
  RatVec y(point.begin() + n, point.end());
  return {MixedStrategy(std::move(x)), MixedStrategy(std::move(y))};
}

FinitelySupportedMeasure point_mass_measure(const BimatrixGame& game,
                                            const StrategyProfile& profile) {
  game.check_profile(profile);
  RatVec point = profile.x.probs();
  point.insert(point.end(), profile.y.probs().begin(), profile.y.probs().end());
  return FinitelySupportedMeasure(game.n_rows() + game.n_cols(), {{Rational(1), point}});
}

namespace {

int sample_index(const RatVec& probs, CounterRng& rng) {
  const Rational u = rng.unit_rational();
  Rational acc(0);
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;  // u landed on accumulated rounding slack
}

MixedStrategy empirical(int n, const Multiset& s) {
  RatVec v(n, Rational(0));
  const Rational unit = make_rational(1, static_cast<long>(s.size()));
  for (int i : s) v[i] += unit;
  return MixedStrategy(std::move(v));
}

}  // namespace

SparseProfile sample_sparse_profile(const FinitelySupportedMeasure& mu, const BimatrixGame& game,
                                    int k, CounterRng& rng) {
  if (k < 1) throw std::invalid_argument("sample_sparse_profile: k must be positive");
  if (!mu.all_weights_nonnegative()) {
    throw std::invalid_argument("sample_sparse_profile: signed measure cannot be sampled");
  }
  if (mu.n != game.n_rows() + game.n_cols()) {
    throw std::invalid_argument("measure dimension mismatch");
  }

  RatVec weights;
  weights.reserve(mu.atoms.size());
  for (const auto& [w, p] : mu.atoms) weights.push_back(w);
  const auto& atom = mu.atoms[sample_index(weights, rng)];
  StrategyProfile base = profile_from_point(game, atom.second);

  SparseProfile sp;
  for (int t = 0; t < k; ++t) sp.S.push_back(sample_index(base.x.probs(), rng));
  for (int t = 0; t < k; ++t) sp.T.push_back(sample_index(base.y.probs(), rng));
  std::sort(sp.S.begin(), sp.S.end());
  std::sort(sp.T.begin(), sp.T.end());
  sp.profile = {empirical(game.n_rows(), sp.S), empirical(game.n_cols(), sp.T)};
  return sp;
}

namespace {

// gamma(S) * prod_i p_i^(multiplicity in S)
Rational multiset_probability(const Multiset& s, const RatVec& p) {
  Rational prob(gamma_coefficient(s));
  for (int i : s) prob *= p[i];
  return prob;
}

}  // namespace

std::map<std::pair<Multiset, Multiset>, Rational> multiset_law(const FinitelySupportedMeasure& mu,
                                                               const BimatrixGame& game, int k,
                                                               size_t cap) {
  if (k < 1) throw std::invalid_argument("multiset_law: k must be positive");
  const auto sets_s = all_multisets(game.n_rows(), k);
  const auto sets_t = all_multisets(game.n_cols(), k);
  if (sets_s.size() * sets_t.size() > cap) {
    throw std::invalid_argument("multiset_law: enumeration cap exceeded");
  }

  std::map<std::pair<Multiset, Multiset>, Rational> law;
  for (const auto& [w, point] : mu.atoms) {
    StrategyProfile p = profile_from_point(game, point);
    // Per-atom marginals, combined as a product of the two stages.
    std::vector<Rational> ps, pt;
    ps.reserve(sets_s.size());
    pt.reserve(sets_t.size());
    for (const auto& s : sets_s) ps.push_back(multiset_probability(s, p.x.probs()));
    for (const auto& t : sets_t) pt.push_back(multiset_probability(t, p.y.probs()));
    for (size_t a = 0; a < sets_s.size(); ++a) {
      if (ps[a] == 0) continue;
      for (size_t b = 0; b < sets_t.size(); ++b) {
        if (pt[b] == 0) continue;
        law[{sets_s[a], sets_t[b]}] += w * ps[a] * pt[b];
      }
    }
  }
  return law;
}

Rational concentration_statistic(const MixedStrategy& x, const RatVec& w, int k, int ell) {
  if (static_cast<int>(w.size()) != x.size()) {
    throw std::invalid_argument("concentration_statistic: w length mismatch");
  }
  for (const auto& wi : w) {
    if (abs(wi) > 1) throw std::invalid_argument("concentration_statistic: |w|_inf exceeds 1");
  }
  if (k < 1 || ell < 1) throw std::invalid_argument("concentration_statistic: k, ell >= 1");

  const int top = 2 * ell;
  Rational mean(0);
  for (int i = 0; i < x.size(); ++i) mean += w[i] * x[i];

  // Raw moments of one centered draw z = w_I - <w, x>.
  RatVec z_moment(top + 1, Rational(0));
  z_moment[0] = 1;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const Rational z = w[i] - mean;
    Rational p(1);
    for (int j = 1; j <= top; ++j) {
      p *= z;
      z_moment[j] += x[i] * p;
    }
  }

  // E[(S_c)^j] for the sum of c iid draws, by the independence recursion
  // E[S_c^j] = sum_a C(j,a) E[S_{c-1}^(j-a)] E[z^a].
  std::vector<std::vector<BigInt>> choose(top + 1, std::vector<BigInt>(top + 1, BigInt(0)));
  for (int jj = 0; jj <= top; ++jj) {
    choose[jj][0] = 1;
    for (int a = 1; a <= jj; ++a) {
      choose[jj][a] = choose[jj - 1][a - 1] + (a <= jj - 1 ? choose[jj - 1][a] : BigInt(0));
    }
  }
  RatVec s_moment(top + 1, Rational(0));
  s_moment[0] = 1;
  for (int c = 1; c <= k; ++c) {
    RatVec next(top + 1, Rational(0));
    for (int j = 0; j <= top; ++j) {
      Rational acc(0);
      for (int a = 0; a <= j; ++a) {
        if (z_moment[a] == 0 || s_moment[j - a] == 0) continue;
        acc += Rational(choose[j][a]) * s_moment[j - a] * z_moment[a];
      }
      next[j] = acc;
    }
    s_moment = std::move(next);
  }

  return s_moment[top] / rational_pow(Rational(k), static_cast<unsigned>(top));
}

namespace {

std::pair<RatVec, RatVec> atom_payoffs(const FinitelySupportedMeasure& mu,
                                       const BimatrixGame& game) {
  RatVec pa, pb;
  pa.reserve(mu.atoms.size());
  pb.reserve(mu.atoms.size());
  for (const auto& [w, point] : mu.atoms) {
    auto [r, c] = payoffs(game, profile_from_point(game, point));
    pa.push_back(r);
    pb.push_back(c);
  }
  return {pa, pb};
}

}  // namespace

FixPayoffsResult fix_payoffs(const FinitelySupportedMeasure& mu, const BimatrixGame& game, int ell,
                             const Rational& eps) {
  if (ell < 1) throw std::invalid_argument("fix_payoffs: ell >= 1");
  if (eps <= 0) throw std::invalid_argument("fix_payoffs: eps must be positive");
  if (!mu.all_weights_nonnegative()) {
    throw std::invalid_argument("fix_payoffs: signed measure");
  }
  auto [pa, pb] = atom_payoffs(mu, game);
  Rational delta1(0), delta2(0);
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    delta1 += mu.atoms[i].first * pa[i];
    delta2 += mu.atoms[i].first * pb[i];
  }
  if (delta1 <= 0 || delta2 <= 0) {
    throw std::invalid_argument("fix_payoffs: mean payoffs must be positive (rescale the game)");
  }

  const Rational eps_pow = rational_pow(eps, static_cast<unsigned>(2 * ell));
  // factor_i = (pi_A pi_B)^2; squared each doubling so weight_i carries
  // (pi_A pi_B)^(2e).
  RatVec factor(mu.atoms.size());
  RatVec weight(mu.atoms.size());
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    factor[i] = rational_pow(Rational(pa[i] * pb[i]), 2);
    weight[i] = mu.atoms[i].first * factor[i];
  }

  double best_ratio = -1.0;
  for (unsigned e = 1; e <= (1u << 16); e *= 2) {
    Rational z(0);
    for (const auto& w : weight) z += w;
    if (z > 0) {
      Rational m_a(0), m_b(0);
      for (size_t i = 0; i < weight.size(); ++i) {
        m_a += weight[i] * pa[i];
        m_b += weight[i] * pb[i];
      }
      m_a /= z;
      m_b /= z;
      Rational cm_a(0), cm_b(0);
      for (size_t i = 0; i < weight.size(); ++i) {
        if (weight[i] == 0) continue;
        cm_a += weight[i] * rational_pow(Rational(pa[i] - m_a), static_cast<unsigned>(2 * ell));
        cm_b += weight[i] * rational_pow(Rational(pb[i] - m_b), static_cast<unsigned>(2 * ell));
      }
      cm_a /= z;
      cm_b /= z;
      const Rational bound_a = eps_pow * rational_pow(m_a, static_cast<unsigned>(2 * ell));
      const Rational bound_b = eps_pow * rational_pow(m_b, static_cast<unsigned>(2 * ell));
      if (cm_a <= bound_a && cm_b <= bound_b && m_a >= delta1 && m_b >= delta2) {
        std::vector<std::pair<Rational, RatVec>> atoms;
        for (size_t i = 0; i < weight.size(); ++i) {
          if (weight[i] == 0) continue;
          atoms.push_back({Rational(weight[i] / z), mu.atoms[i].second});
        }
        FixPayoffsResult out{FinitelySupportedMeasure(mu.n, std::move(atoms)), m_a, m_b, e};
        return out;
      }
      const double ra = to_double(cm_a) / std::max(1e-300, to_double(bound_a));
      const double rb = to_double(cm_b) / std::max(1e-300, to_double(bound_b));
      best_ratio = best_ratio < 0 ? std::max(ra, rb) : std::min(best_ratio, std::max(ra, rb));
    }
    if (e == (1u << 16)) break;
    for (size_t i = 0; i < weight.size(); ++i) {
      weight[i] *= factor[i];
      factor[i] = rational_pow(factor[i], 2);
    }
  }
  throw std::runtime_error("fix_payoffs: concentration unachievable within power cap 2^16 "
                           "(best centered-moment ratio " +
                           std::to_string(best_ratio) + ")");
}

int default_sparsity(int n, const Rational& eps) {
  if (n < 1 || eps <= 0) throw std::invalid_argument("default_sparsity: bad arguments");
  const double k = 2.0 * std::log(static_cast<double>(n)) / to_double(Rational(eps * eps));
  return std::max(1, static_cast<int>(std::ceil(k)));
}

RoundingReport rounding_experiment(const FinitelySupportedMeasure& mu, const BimatrixGame& game,
                                   const Rational& eps, int k, int trials, uint64_t seed,
                                   std::vector<RoundingTrial>* trials_out) {
  if (trials < 1) throw std::invalid_argument("rounding_experiment: trials >= 1");
  RoundingReport rep;
  rep.eps = eps;
  rep.trials = trials;
  rep.k = k > 0 ? k : default_sparsity(std::max(game.n_rows(), game.n_cols()), eps);

  auto fixed = fix_payoffs(mu, game, /*ell=*/1, eps);
  rep.m_A = fixed.m_A;
  rep.m_B = fixed.m_B;

  int successes = 0, floor_hits = 0;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    SparseProfile sp = sample_sparse_profile(fixed.measure, game, rep.k, rng);
    RoundingTrial trial;
    trial.S = sp.S;
    trial.T = sp.T;
    auto [pr, pc] = payoffs(game, sp.profile);
    auto [rr, cr] = regrets(game, sp.profile);
    trial.row_payoff = pr;
    trial.col_payoff = pc;
    trial.row_regret = rr;
    trial.col_regret = cr;
    trial.eps_ne = rr <= eps && cr <= eps;
    trial.payoff_floor = pr >= fixed.m_A - eps && pc >= fixed.m_B - eps;
    successes += trial.eps_ne ? 1 : 0;
    floor_hits += trial.payoff_floor ? 1 : 0;
    if (trials_out) trials_out->push_back(std::move(trial));
  }
  rep.success_rate = static_cast<double>(successes) / trials;
  rep.payoff_floor_rate = static_cast<double>(floor_hits) / trials;
  return rep;
}

}  // namespace nashkit
