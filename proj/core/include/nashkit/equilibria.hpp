#pragma once

#include <optional>
#include <vector>

#include "nashkit/game.hpp"
#include "nashkit/linear.hpp"

namespace nashkit {

struct NeCertificate {
  StrategyProfile profile;
  IndexSet row_support, col_support;  // supports of the profile itself
  Rational welfare;                   // x^T (R + C) y
  // True when the profile is one representative of an underdetermined support
  // pair (a continuum of equilibria), not an isolated solution.
  bool degenerate = false;
};

enum class Verdict { Accept, Reject };

struct OracleAnswer {
  Verdict verdict;
  bool accepted() const { return verdict == Verdict::Accept; }
};

/// Brute-force exact-NE oracle by support-pair enumeration over rationals.
/// Feasible for desk-scale games only (guidance: per-side supports up to
/// max_support, total strategy count in the low tens). Every exact NE whose
/// support sizes are within max_support is either returned exactly (isolated
/// support pairs) or covered by a flagged representative of its support pair.
std::vector<NeCertificate> enumerate_ne(const BimatrixGame& game, int max_support);

/// Enumerated NE maximizing welfare; ties broken by lexicographic support
/// order (rows, then columns).
NeCertificate max_welfare_ne(const BimatrixGame& game);

/// Accepts iff the profile is an eps-NE.
OracleAnswer verification_oracle(const BimatrixGame& game, const StrategyProfile& profile,
                                 const Rational& eps);

enum class Side { Row, Col };

/// Accepts iff some strategy for the other side completes the input to an
/// eps-NE. With one side fixed the conditions are linear; decided by exact
/// rational feasibility.
OracleAnswer partial_verification_oracle(const BimatrixGame& game, Side side,
                                         const MixedStrategy& strategy, const Rational& eps);

/// Accepts iff an eps-WNE exists with supp(x) within row_support and supp(y)
/// within col_support (exact linear feasibility over sub-support pairs).
OracleAnswer support_oracle(const BimatrixGame& game, const IndexSet& row_support,
                            const IndexSet& col_support, const Rational& eps);

}  // namespace nashkit
