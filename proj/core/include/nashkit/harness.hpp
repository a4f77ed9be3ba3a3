#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nashkit/equilibria.hpp"
#include "nashkit/gadgets.hpp"

namespace nashkit {

enum class OracleKind { Full, Partial, Support };

struct Query {
  OracleKind kind = OracleKind::Full;
  std::optional<StrategyProfile> profile;   // Full
  Side side = Side::Row;                    // Partial
  std::optional<MixedStrategy> strategy;    // Partial
  IndexSet rows, cols;                      // Support
};

OracleAnswer answer_query(const BimatrixGame& game, const Query& query, const Rational& eps);

/// Ordered, possibly adaptive generator of queries. The strategy sees only
/// the shared witness and the oracle's answers; the target game is never
/// exposed to it.
class QueryStrategy {
 public:
  virtual ~QueryStrategy() = default;
  virtual void reset(const StrategyProfile& shared_witness) = 0;
  /// previous = verdict of the last answered query (nullopt on first call).
  /// Returns nullopt when out of candidates.
  virtual std::optional<Query> next(std::optional<Verdict> previous) = 0;
};

/// Fixed-order enumerator: queries each member's canonical equilibrium in
/// index order, rendered for the requested oracle kind.
class NaiveEnumerationStrategy : public QueryStrategy {
 public:
  NaiveEnumerationStrategy(const GameFamily& family, OracleKind kind)
      : family_(family), kind_(kind) {}
  void reset(const StrategyProfile&) override { next_ = 0; }
  std::optional<Query> next(std::optional<Verdict>) override;

 private:
  const GameFamily& family_;
  OracleKind kind_;
  size_t next_ = 0;
};

struct OvRunRecord {
  int target_index = -1;
  int queries_used = 0;
  bool identified = false;
  std::vector<std::pair<Query, Verdict>> transcript;
};

struct OvSummary {
  int runs = 0;
  double mean_queries = 0.0;
  int min_queries = 0, max_queries = 0;
  double identification_rate = 0.0;
};

struct OvResult {
  std::vector<OvRunRecord> records;
  OvSummary summary;
};

/// Draws uniform targets, feeds the strategy the shared witness (zero
/// information by construction), answers queries with the target's oracle and
/// counts them; stops on accept or exhaustion. A run counts as identified
/// when its accepted query is accepted by exactly one family member.
OvResult ov_simulate(const GameFamily& family, QueryStrategy& strategy, OracleKind kind,
                     const Rational& eps, int targets, uint64_t seed);

/// Audit of the elimination argument: every rejected full-profile query in
/// the transcripts is an eps-NE of at most one family member.
bool elimination_audit(const GameFamily& family, const std::vector<OvRunRecord>& records,
                       const Rational& eps);

struct DisjointnessReport {
  bool ok = false;
  // Min L1 distances between member-specific equilibria of distinct members.
  std::optional<Rational> min_row_distance, min_col_distance;
  bool ball_checked = false;
  bool ball_ok = false;
  Rational ball_lhs, ball_rhs;  // 18 (tau+1) r  vs  min_l1 * c
  std::string detail;
};

/// Enumerates exact equilibria of every member and certifies that
/// member-specific equilibria (profiles that are NOT equilibria of every
/// member; the shared witness is common by construction) never coincide
/// across members. For eps > 0 additionally certifies that the eps-NE balls
/// around distinct subset centers stay disjoint: 18 (tau+1) r < min_l1 * c
/// with r the rational sqrt surrogate of eps.
DisjointnessReport disjointness_certificate(const GameFamily& family, const Rational& eps);

}  // namespace nashkit
