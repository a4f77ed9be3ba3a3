#include "nashkit/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "nashkit/harness.hpp"
#include "nashkit/rounding.hpp"
#include "nashkit/rng.hpp"
#include "nashkit/sat.hpp"

namespace nashkit {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& msg) {
    if (!cond) {
      if (!ok) detail << "; ";
      ok = false;
      detail << msg;
    }
  }
};

Graph random_graph_with_planted_is(int n, int k, CounterRng& rng, IndexSet* planted_out) {
  IndexSet planted;
  while (static_cast<int>(planted.size()) < k) {
    int v = static_cast<int>(rng.below(n));
    if (std::find(planted.begin(), planted.end(), v) == planted.end()) planted.push_back(v);
  }
  std::sort(planted.begin(), planted.end());
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      bool both_planted = std::binary_search(planted.begin(), planted.end(), u) &&
                          std::binary_search(planted.begin(), planted.end(), v);
      if (!both_planted && rng.coin()) g.add_edge(u, v);
    }
  }
  *planted_out = planted;
  return g;
}

StrategyProfile padded_is_profile(int n, const IndexSet& planted) {
  MixedStrategy s = MixedStrategy::uniform_on(2 * n + 1, planted);
  return {s, s};
}

// Random simplex point with entries of denominator <= grid.
MixedStrategy random_strategy(int n, int grid, CounterRng& rng) {
  while (true) {
    std::vector<long> w(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = static_cast<long>(rng.below(grid + 1));
      total += w[i];
    }
    if (total == 0) continue;
    RatVec v(n);
    for (int i = 0; i < n; ++i) v[i] = make_rational(w[i], total);
    return MixedStrategy(std::move(v));
  }
}

// ---- criterion implementations ------------------------------------------

CriterionResult criterion_is_completeness(uint64_t seed) {
  Check c;
  CounterRng rng(seed, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(2));  // {2,3}
    const int n = k + 1 + static_cast<int>(rng.below(8 - k));  // <= 8
    IndexSet planted;
    Graph g = random_graph_with_planted_is(n, k, rng, &planted);
    BimatrixGame game = is_game_scaled(g, k);
    StrategyProfile profile = padded_is_profile(n, planted);
    const Rational expected = make_rational(1, k) + make_rational(1, 2L * k * k);
    auto [pr, pc] = payoffs(game, profile);
    c.expect(verification_oracle(game, profile, Rational(0)).accepted(),
             "trial " + std::to_string(trial) + ": planted profile is not an exact NE");
    c.expect(pr == expected && pc == expected,
             "trial " + std::to_string(trial) + ": payoff " + to_string(pr) + " != " +
                 to_string(expected));
  }
  return {1, "is-game completeness (20 planted instances)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_is_soundness(uint64_t seed) {
  Check c;
  CounterRng rng(seed, 2);
  int done = 0;
  while (done < 10) {
    const int k = done % 2 == 0 ? 2 : 3;
    const int n = 3 + static_cast<int>(rng.below(4));  // 3..6
    if (n < k) continue;
    Graph g(n);
    if (k == 2) {
      g = Graph(n);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);  // complete: no 2-IS
      }
    } else {
      // Rejection-sample a dense graph with independence number < 3.
      bool found = false;
      for (int attempt = 0; attempt < 200 && !found; ++attempt) {
        Graph cand(n);
        for (int u = 0; u < n; ++u) {
          for (int v = u + 1; v < n; ++v) {
            if (rng.below(4) != 0) cand.add_edge(u, v);  // edge prob 3/4
          }
        }
        if (!cand.has_independent_set(3)) {
          g = cand;
          found = true;
        }
      }
      if (!found) continue;
    }
    c.expect(!g.has_independent_set(k), "instance " + std::to_string(done) + ": has a k-IS");
    BimatrixGame game = is_game_scaled(g, k);
    auto nes = enumerate_ne(game, game.n_rows());
    c.expect(!nes.empty(), "instance " + std::to_string(done) + ": no NE found");
    const IndexSet last{2 * n};
    for (const auto& cert : nes) {
      c.expect(cert.row_support == last && cert.col_support == last,
               "instance " + std::to_string(done) + ": NE with support off the final strategy");
    }
    ++done;
  }
  return {2, "is-game soundness (10 no-IS instances, full enumeration)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_gmp_contrapositive(uint64_t seed) {
  Check c;
  CounterRng rng(seed, 3);
  for (int m = 2; m <= 6; ++m) {
    BimatrixGame game = gmp_game(m);
    const Rational eps = make_rational(1, 2L * m * m);
    const Rational radius = Rational(m) * eps;  // = 1/(2m)
    const MixedStrategy uniform = MixedStrategy::uniform(m);
    int tested = 0;
    while (tested < 1000) {
      MixedStrategy x = random_strategy(m, 16, rng);
      if (l1_distance(x.probs(), uniform.probs()) <= radius) continue;
      MixedStrategy y = random_strategy(m, 16, rng);
      if (is_eps_wne(game, {x, y}, eps)) {
        c.expect(false, "m=" + std::to_string(m) + ": far-from-uniform profile accepted as WNE");
        break;
      }
      ++tested;
    }
  }
  return {3, "generalized matching pennies contrapositive (5000 profiles)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_stitching(uint64_t seed) {
  Check c;
  (void)seed;
  const int k = 3;
  const Rational delta = make_rational(1, k) + make_rational(1, 2L * k * k);  // 7/18

  Graph empty3(3);           // 3-IS present (completeness side)
  Graph triangle(3);         // no 3-IS (soundness side)
  triangle.add_edge(0, 1);
  triangle.add_edge(0, 2);
  triangle.add_edge(1, 2);

  const std::vector<std::pair<int, IndexSet>> goods = {
      {4, {0, 1}}, {5, {1, 3}}, {5, {0, 1, 2}}, {6, {2, 4}}, {7, {0, 3, 6}}};

  BimatrixGame nice_complete = is_game_scaled(empty3, k);
  BimatrixGame nice_sound = is_game_scaled(triangle, k);
  StrategyProfile witness = padded_is_profile(3, {0, 1, 2});
  const int N = nice_complete.n_rows();

  for (size_t pair_idx = 0; pair_idx < goods.size(); ++pair_idx) {
    const auto& [K, S] = goods[pair_idx];
    BimatrixGame good = exp_good_game(K, S);
    const std::string tag = "pair " + std::to_string(pair_idx);

    // (a) completeness: the padded planted-IS equilibrium survives stitching.
    BimatrixGame stitched_a = stitch(nice_complete, good, delta);
    RatVec wx = witness.x.probs();
    wx.insert(wx.end(), K, Rational(0));
    StrategyProfile padded{MixedStrategy(wx), MixedStrategy(wx)};
    c.expect(verification_oracle(stitched_a, padded, Rational(0)).accepted(),
             tag + ": padded nice NE rejected");

    // (b) soundness: with no k-IS every exact NE collapses onto the good block
    // at exactly the uniform distribution on S.
    BimatrixGame stitched_b = stitch(nice_sound, good, delta);
    auto nes = enumerate_ne(stitched_b, stitched_b.n_rows());
    c.expect(!nes.empty(), tag + ": no NE found in the sound variant");
    MixedStrategy u_ks = MixedStrategy::uniform_on(K, S);
    for (const auto& cert : nes) {
      bool good_block = cert.row_support.front() >= N && cert.col_support.front() >= N;
      c.expect(good_block, tag + ": NE touches the nice block");
      if (!good_block) continue;
      bool projection_ok = true;
      for (int i = 0; i < K; ++i) {
        if (cert.profile.x[N + i] != u_ks[i] || cert.profile.y[N + i] != u_ks[i]) {
          projection_ok = false;
        }
      }
      c.expect(projection_ok, tag + ": NE projection differs from uniform on S");
    }
  }
  return {4, "stitching completeness/soundness (5 pairs, N+K <= 14)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_const_good_structure(uint64_t seed) {
  Check c;
  (void)seed;
  const int l = 4;
  const int n = 6;  // C(4,2)
  const std::vector<IndexSet> subsets = {{0, 1, 2, 3}, {1, 2, 4, 5}};
  for (const auto& S : subsets) {
    BimatrixGame game = const_good_game(l, S);
    auto nes = enumerate_ne(game, game.n_rows());
    c.expect(!nes.empty(), "no NE found");
    MixedStrategy u_half = MixedStrategy::uniform_on(n, S);
    const Rational half = make_rational(1, 2);
    for (const auto& cert : nes) {
      Rational mass(0);
      for (int i = 0; i < n; ++i) mass += cert.profile.x[i];
      c.expect(mass == half, "sigma(x_L) != 1/2 exactly");
      for (int i = 0; i < n; ++i) {
        c.expect(cert.profile.x[i] == u_half[i] * half, "x_L differs from uniform-on-S / 2");
      }
    }
  }
  return {5, "const-good block structure at l=4 (exact)", c.ok, c.detail.str(), 0};
}

GameFamily build_exp_family_k5() {
  FamilyConfig cfg;
  cfg.kind = FamilyKind::Exp;
  cfg.graph = Graph(3);  // empty: unique planted 3-IS
  cfg.k = 3;
  cfg.K = 5;
  return build_hard_family(cfg);
}

CriterionResult criterion_family_disjointness(uint64_t seed) {
  Check c;
  (void)seed;
  GameFamily family = build_exp_family_k5();
  c.expect(family.games.size() == 31, "expected 31 members");
  auto report = disjointness_certificate(family, Rational(0));
  c.expect(report.ok, "disjointness certificate failed: " + report.detail);
  if (report.min_row_distance) {
    c.expect(*report.min_row_distance > 0, "row distance not positive");
  }
  for (size_t i = 0; i < family.games.size() && c.ok; ++i) {
    for (size_t j = 0; j < family.games.size(); ++j) {
      if (i == j) continue;
      auto ans = partial_verification_oracle(family.games[j], Side::Row, family.canonical[i].x,
                                             Rational(0));
      if (ans.accepted()) {
        c.expect(false, "partial oracle accepted member " + std::to_string(i) +
                            "'s canonical strategy on member " + std::to_string(j));
        break;
      }
    }
  }
  return {6, "exp family (K=5) disjointness + cross-member partial oracle", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_rounding_success(uint64_t seed) {
  Check c;
  const Rational eps = make_rational(3, 10);
  const Rational alpha = make_rational(1, 100);

  struct Case {
    std::string name;
    BimatrixGame game;
    FinitelySupportedMeasure measure;
    int n;
  };
  std::vector<Case> cases;

  for (int m : {4, 8, 16}) {
    BimatrixGame game = rescale(gmp_game(m), Rational(1), make_rational(1, 2));
    StrategyProfile ne{MixedStrategy::uniform(m), MixedStrategy::uniform(m)};
    cases.push_back({"gmp-" + std::to_string(m), game, point_mass_measure(game, ne), m});
  }
  for (int n : {2, 8}) {
    RatMat I(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    BimatrixGame game(I, I, Rational(1));
    // Mixture over all pure coordination equilibria plus the uniform one.
    std::vector<std::pair<Rational, RatVec>> atoms;
    const Rational w = make_rational(1, n + 1);
    for (int i = 0; i < n; ++i) {
      RatVec point(2 * n, Rational(0));
      point[i] = 1;
      point[n + i] = 1;
      atoms.push_back({w, point});
    }
    RatVec uniform_point(2 * n, make_rational(1, n));
    atoms.push_back({w, uniform_point});
    cases.push_back({"coordination-" + std::to_string(n), game,
                     FinitelySupportedMeasure(2 * n, std::move(atoms)), n});
  }

  for (auto& cs : cases) {
    const int trials = 200;
    RoundingReport rep =
        rounding_experiment(cs.measure, cs.game, eps, /*k=*/0, trials, seed ^ cs.n);
    const Rational p0 = 1 - make_rational(2, cs.n);
    const int threshold = binomial_lower_threshold(trials, p0, alpha);
    const int successes = static_cast<int>(std::lround(rep.success_rate * trials));
    c.expect(successes >= threshold,
             cs.name + ": successes " + std::to_string(successes) + " below binomial threshold " +
                 std::to_string(threshold) + " for rate 1-2/n");
  }
  return {7, "sparse rounding success rate (200 trials per game)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_concentration(uint64_t seed) {
  Check c;
  (void)seed;
  const Rational eps = make_rational(1, 2);
  // All x on the quarter-grid of the 3-simplex.
  std::vector<MixedStrategy> grid;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      RatVec v = {make_rational(a, 4), make_rational(b, 4), make_rational(4 - a - b, 4)};
      grid.push_back(MixedStrategy(std::move(v)));
    }
  }
  for (int ell : {1, 2}) {
    const int k = 64 * ell;  // 16*ell / eps^2
    const Rational bound = rational_pow(eps, static_cast<unsigned>(2 * ell));
    for (const auto& x : grid) {
      for (int w0 = -1; w0 <= 1; ++w0) {
        for (int w1 = -1; w1 <= 1; ++w1) {
          for (int w2 = -1; w2 <= 1; ++w2) {
            RatVec w = {Rational(w0), Rational(w1), Rational(w2)};
            Rational stat = concentration_statistic(x, w, k, ell);
            if (stat > bound) {
              c.expect(false, "statistic exceeds eps^(2l) at ell=" + std::to_string(ell));
              return {8, "concentration oracle on the quarter-grid", c.ok, c.detail.str(), 0};
            }
          }
        }
      }
    }
  }
  return {8, "concentration oracle on the quarter-grid (exact)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_pseudo_suite(uint64_t seed) {
  Check c;
  CounterRng rng(seed, 9);
  const double tol = 1e-8;

  auto random_measure = [&](int n, int atoms) {
    std::vector<std::pair<Rational, RatVec>> list;
    std::vector<long> raw(atoms);
    long total = 0;
    for (int a = 0; a < atoms; ++a) {
      raw[a] = 1 + static_cast<long>(rng.below(8));
      total += raw[a];
    }
    for (int a = 0; a < atoms; ++a) {
      RatVec point(n);
      for (int i = 0; i < n; ++i) {
        long num = static_cast<long>(rng.below(9)) - 4;  // -4..4
        long den = 1 + static_cast<long>(rng.below(3));
        point[i] = make_rational(num, den * 2);
      }
      list.push_back({make_rational(raw[a], total), std::move(point)});
    }
    return FinitelySupportedMeasure(n, std::move(list));
  };
  auto random_poly = [&](int n, int max_deg, int max_terms) {
    Polynomial p(n);
    const int terms = 1 + static_cast<int>(rng.below(max_terms));
    for (int t = 0; t < terms; ++t) {
      Exponent e(n, 0);
      int budget = max_deg;
      for (int i = 0; i < n && budget > 0; ++i) {
        int d = static_cast<int>(rng.below(budget + 1));
        e[i] = d;
        budget -= d;
      }
      long coeff = static_cast<long>(rng.below(9)) - 4;
      if (coeff != 0) p.add_term(e, Rational(coeff));
    }
    if (p.is_zero()) p.add_term(Exponent(n, 0), Rational(1));
    return p;
  };

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int d = 2 + 2 * static_cast<int>(rng.below(3));  // 2, 4, 6
    auto mu = random_measure(n, 1 + static_cast<int>(rng.below(4)));
    PseudoExpectation pe = moments_from_measure(mu, d);
    auto rep = validate(pe, tol);
    c.expect(rep.valid, "trial " + std::to_string(trial) + ": true distribution failed validate");
    if (!c.ok) break;

    if (trial < 50) {
      PolynomialMap map;
      map.n_in = n;
      for (int j = 0; j < n; ++j) map.components.push_back(random_poly(n, 2, 3));
      PseudoExpectation pushed = pushforward(pe, map);
      c.expect(pushed.d == d / map.degree(), "pushforward degree mismatch");
      auto rep2 = validate(pushed, tol);
      c.expect(rep2.valid, "trial " + std::to_string(trial) + ": pushforward failed validate");
    }
    if (d >= 4) {
      Polynomial f = random_poly(n, d / 4, 3), g = random_poly(n, d / 4, 3);
      c.expect(holder_cs_check(pe, f, g),
               "trial " + std::to_string(trial) + ": Cauchy-Schwarz violated");
    }
    if (!c.ok) break;
  }

  // Point masses at enumerated equilibria are pseudo-equilibria at eps = 0.
  RatMat I2{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  BimatrixGame coordination(I2, I2, Rational(1));
  for (const BimatrixGame& game : {coordination, gmp_game(2), gmp_game(3)}) {
    for (const auto& cert : enumerate_ne(game, game.n_rows())) {
      auto mu = point_mass_measure(game, cert.profile);
      PseudoExpectation pe = moments_from_measure(mu, 4);
      c.expect(is_pseudo_equilibrium(pe, game, Rational(0), tol),
               "point mass at an exact NE failed the pseudo-equilibrium check");
    }
  }
  return {9, "pseudo-expectation suite (validate/pushforward/CS/point masses)", c.ok,
          c.detail.str(), 0};
}

CriterionResult criterion_free_game(uint64_t seed) {
  Check c;
  CounterRng rng(seed, 10);

  int sat_done = 0;
  uint64_t sub_seed = seed;
  while (sat_done < 10) {
    ++sub_seed;
    const int n = 4 + static_cast<int>(rng.below(3));  // 4..6
    const int m = 2 * n;
    CnfFormula f = random_3sat(n, m, sub_seed);
    auto assignment = find_satisfying(f);
    if (!assignment) continue;

    FreeGame fg = build_free_game(f, /*g1=*/2, /*g2=*/1, sub_seed);
    BimatrixGame coop = cooperative_game(fg);
    StrategyProfile profile = assignment_to_profile(fg, *assignment);
    auto [pr, pc] = payoffs(coop, profile);
    c.expect(pr == 1 && pc == 1, "satisfiable instance: payoffs not exactly (1,1)");
    auto [rr, cr] = regrets(coop, profile);
    c.expect(rr == 0 && cr == 0, "satisfiable instance: nonzero regret");
    // Question-marginal identity: for every variable group, the answer mass
    // sums to exactly 1 (one group here, mirroring the per-question view).
    for (int j = 0; j < fg.g2(); ++j) {
      Rational mass(0);
      const uint64_t answers = 1ull << fg.var_groups[j].size();
      for (uint64_t b = 0; b < answers; ++b) mass += profile.y[coop_col_index(fg, j, b)];
      c.expect(mass * fg.g2() == 1, "question marginal identity violated");
    }
    ++sat_done;
    if (!c.ok) break;
  }

  int unsat_done = 0;
  while (unsat_done < 5 && c.ok) {
    ++sub_seed;
    const int n = 4 + static_cast<int>(rng.below(3));
    const int m = 6 * n;
    CnfFormula f = random_3sat(n, m, sub_seed);
    if (find_satisfying(f)) continue;
    FreeGame fg = build_free_game(f, /*g1=*/2, /*g2=*/2, sub_seed);
    c.expect(game_value(fg) < 1, "unsatisfiable instance with free-game value 1");
    ++unsat_done;
  }
  return {10, "free game from 3SAT (10 satisfiable + 5 unsatisfiable)", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_ov_simulation(uint64_t seed) {
  Check c;
  GameFamily family = build_exp_family_k5();
  const int gamma_count = static_cast<int>(family.games.size());
  c.expect(gamma_count == 31, "expected 31 members");

  NaiveEnumerationStrategy strategy(family, OracleKind::Full);
  auto result = ov_simulate(family, strategy, OracleKind::Full, Rational(0), 200, seed ^ 11);

  const double mean = result.summary.mean_queries;
  const double expected = (gamma_count + 1) / 2.0;
  const double sd = std::sqrt((static_cast<double>(gamma_count) * gamma_count - 1) / 12.0);
  const double se = sd / std::sqrt(200.0);
  c.expect(std::abs(mean - expected) <= 3 * se,
           "mean queries " + std::to_string(mean) + " outside 3 standard errors of " +
               std::to_string(expected));
  c.expect(result.summary.identification_rate == 1.0, "an accepted query failed to identify");
  c.expect(elimination_audit(family, result.records, Rational(0)),
           "a rejected query was within the NE set of more than one member");
  return {11, "OV query simulation (naive enumerator over 31 members)", c.ok, c.detail.str(), 0};
}

}  // namespace

int binomial_lower_threshold(int trials, const Rational& p, const Rational& alpha) {
  // P[X < c] = sum_{i < c} C(trials, i) p^i (1-p)^(trials - i), exact.
  const Rational q = 1 - p;
  Rational cdf(0);
  for (int c = 0; c <= trials; ++c) {
    if (c > 0) {
      BigInt binom;
      mpz_bin_uiui(binom.get_mpz_t(), trials, c - 1);
      cdf += Rational(binom) * rational_pow(p, static_cast<unsigned>(c - 1)) *
             rational_pow(q, static_cast<unsigned>(trials - c + 1));
    }
    if (cdf > alpha) return c - 1 < 0 ? 0 : c - 1;
  }
  return trials;
}

std::vector<CriterionResult> run_acceptance_suite(const SuiteConfig& config) {
  using Runner = std::function<CriterionResult(uint64_t)>;
  const std::vector<std::pair<int, Runner>> runners = {
      {1, criterion_is_completeness},   {2, criterion_is_soundness},
      {3, criterion_gmp_contrapositive}, {4, criterion_stitching},
      {5, criterion_const_good_structure}, {6, criterion_family_disjointness},
      {7, criterion_rounding_success},  {8, criterion_concentration},
      {9, criterion_pseudo_suite},      {10, criterion_free_game},
      {11, criterion_ov_simulation},
  };

  std::vector<CriterionResult> results;
  for (const auto& [id, runner] : runners) {
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), id) == config.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = runner(config.seed);
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (config.log) {
      (*config.log) << (res.passed ? "[PASS] " : "[FAIL] ") << res.id << " " << res.name;
      if (!res.passed) (*config.log) << " -- " << res.detail;
      (*config.log) << " (" << res.seconds << "s)" << std::endl;
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace nashkit
