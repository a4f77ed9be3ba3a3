#include "nashkit/harness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nashkit/rng.hpp"

namespace nashkit {

OracleAnswer answer_query(const BimatrixGame& game, const Query& query, const Rational& eps) {
  switch (query.kind) {
    case OracleKind::Full:
      if (!query.profile) throw std::invalid_argument("full query without profile");
      return verification_oracle(game, *query.profile, eps);
    case OracleKind::Partial:
      if (!query.strategy) throw std::invalid_argument("partial query without strategy");
      return partial_verification_oracle(game, query.side, *query.strategy, eps);
    case OracleKind::Support:
      return support_oracle(game, query.rows, query.cols, eps);
  }
  throw std::logic_error("unreachable");
}

std::optional<Query> NaiveEnumerationStrategy::next(std::optional<Verdict>) {
  if (next_ >= family_.canonical.size()) return std::nullopt;
  const StrategyProfile& ne = family_.canonical[next_++];
  Query q;
  q.kind = kind_;
  switch (kind_) {
    case OracleKind::Full:
      q.profile = ne;
      break;
    case OracleKind::Partial:
      q.side = Side::Row;
      q.strategy = ne.x;
      break;
    case OracleKind::Support:
      q.rows = ne.x.support();
      q.cols = ne.y.support();
      break;
  }
  return q;
}

OvResult ov_simulate(const GameFamily& family, QueryStrategy& strategy, OracleKind kind,
                     const Rational& eps, int targets, uint64_t seed) {
  if (family.games.empty()) throw std::invalid_argument("ov_simulate: empty family");
  if (targets < 1) throw std::invalid_argument("ov_simulate: need at least one run");

  OvResult result;
  long total_queries = 0;
  int identified_count = 0;
  for (int run = 0; run < targets; ++run) {
    CounterRng rng(seed, static_cast<uint64_t>(run));
    const int target = static_cast<int>(rng.below(family.games.size()));
    const BimatrixGame& game = family.games[target];

    OvRunRecord rec;
    rec.target_index = target;
    strategy.reset(family.shared_witness);
    std::optional<Verdict> previous;
    while (auto q = strategy.next(previous)) {
      if (q->kind != kind) throw std::invalid_argument("ov_simulate: query kind mismatch");
      OracleAnswer ans = answer_query(game, *q, eps);
      rec.transcript.push_back({*q, ans.verdict});
      previous = ans.verdict;
      if (ans.accepted()) {
        // Accepts identify the target only when no other member would also
        // accept the same query.
        int accepting = 0;
        for (const auto& g : family.games) {
          if (answer_query(g, *q, eps).accepted()) ++accepting;
        }
        rec.identified = (accepting == 1);
        break;
      }
    }
    rec.queries_used = static_cast<int>(rec.transcript.size());
    total_queries += rec.queries_used;
    identified_count += rec.identified ? 1 : 0;
    result.records.push_back(std::move(rec));
  }

  OvSummary& s = result.summary;
  s.runs = targets;
  s.mean_queries = static_cast<double>(total_queries) / targets;
  s.min_queries = result.records.front().queries_used;
  s.max_queries = s.min_queries;
  for (const auto& r : result.records) {
    s.min_queries = std::min(s.min_queries, r.queries_used);
    s.max_queries = std::max(s.max_queries, r.queries_used);
  }
  s.identification_rate = static_cast<double>(identified_count) / targets;
  return result;
}

bool elimination_audit(const GameFamily& family, const std::vector<OvRunRecord>& records,
                       const Rational& eps) {
  for (const auto& rec : records) {
    for (const auto& [query, verdict] : rec.transcript) {
      if (verdict != Verdict::Reject || query.kind != OracleKind::Full) continue;
      int accepting = 0;
      for (const auto& g : family.games) {
        if (is_eps_ne(g, *query.profile, eps)) ++accepting;
      }
      if (accepting > 1) return false;
    }
  }
  return true;
}

DisjointnessReport disjointness_certificate(const GameFamily& family, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  DisjointnessReport rep;
  const size_t count = family.games.size();
  if (count < 2) {
    rep.ok = true;
    rep.detail = "fewer than two members; nothing to separate";
    return rep;
  }

  // Exact equilibria per member, then drop profiles common to every member
  // (the shared witness is one by construction and carries no information).
  std::vector<std::vector<StrategyProfile>> member_nes(count);
  for (size_t g = 0; g < count; ++g) {
    const int dim = std::max(family.games[g].n_rows(), family.games[g].n_cols());
    for (auto& cert : enumerate_ne(family.games[g], dim)) {
      member_nes[g].push_back(std::move(cert.profile));
    }
  }
  auto common_to_all = [&](const StrategyProfile& p) {
    for (const auto& g : family.games) {
      if (!is_eps_ne(g, p, Rational(0))) return false;
    }
    return true;
  };
  std::vector<std::vector<const StrategyProfile*>> specific(count);
  for (size_t g = 0; g < count; ++g) {
    for (const auto& p : member_nes[g]) {
      if (!common_to_all(p)) specific[g].push_back(&p);
    }
    if (specific[g].empty()) {
      rep.ok = false;
      rep.detail = "member " + std::to_string(g) + " has no member-specific equilibrium";
      return rep;
    }
  }

  for (size_t a = 0; a < count; ++a) {
    for (size_t b = a + 1; b < count; ++b) {
      for (const auto* pa : specific[a]) {
        for (const auto* pb : specific[b]) {
          Rational dx = l1_distance(pa->x.probs(), pb->x.probs());
          Rational dy = l1_distance(pa->y.probs(), pb->y.probs());
          if (!rep.min_row_distance || dx < *rep.min_row_distance) rep.min_row_distance = dx;
          if (!rep.min_col_distance || dy < *rep.min_col_distance) rep.min_col_distance = dy;
        }
      }
    }
  }
  rep.ok = *rep.min_row_distance > 0 && *rep.min_col_distance > 0;
  if (!rep.ok) {
    rep.detail = "member-specific equilibria coincide across members";
    return rep;
  }

  if (eps > 0) {
    rep.ball_checked = true;
    if (!family.index_sets.min_l1) {
      rep.ball_ok = false;
      rep.detail = "no pairwise subset distance available";
    } else {
      const Rational r = sqrt_upper_bound(eps);
      rep.ball_lhs = Rational(18) * (family.tau + 1) * r;
      rep.ball_rhs = *family.index_sets.min_l1 * family.c;
      rep.ball_ok = rep.ball_lhs < rep.ball_rhs;
      if (!rep.ball_ok) {
        rep.detail = "ball condition violated: 18(tau+1)sqrt(eps) = " + to_string(rep.ball_lhs) +
                     " >= min_l1 * c = " + to_string(rep.ball_rhs);
      }
    }
    rep.ok = rep.ok && rep.ball_ok;
  }
  return rep;
}

}  // namespace nashkit
