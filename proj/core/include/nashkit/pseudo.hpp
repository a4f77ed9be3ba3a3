#pragma once

#include <map>
#include <vector>

#include "nashkit/game.hpp"

namespace nashkit {

using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  explicit Polynomial(int n_vars) : n_(n_vars) {}
  static Polynomial constant(int n_vars, const Rational& c);
  static Polynomial variable(int n_vars, int index);

  int n_vars() const { return n_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Exponent& e, const Rational& coeff);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(unsigned exponent) const;

  Rational eval(const RatVec& point) const;

 private:
  int n_;
  std::map<Exponent, Rational> terms_;  // no zero coefficients stored
};

struct PolynomialMap {
  int n_in = 0;
  std::vector<Polynomial> components;

  int n_out() const { return static_cast<int>(components.size()); }
  /// Max component degree, floored at 1.
  int degree() const;
};

/// Weighted point list; weights sum to exactly 1 but may be signed.
struct FinitelySupportedMeasure {
  int n = 0;
  std::vector<std::pair<Rational, RatVec>> atoms;

  FinitelySupportedMeasure() = default;
  FinitelySupportedMeasure(int dim, std::vector<std::pair<Rational, RatVec>> atom_list);

  bool all_weights_nonnegative() const;
};

/// Moment table over all monomials of total degree <= d.
struct PseudoExpectation {
  int n = 0;
  int d = 0;
  std::map<Exponent, Rational> moments;

  const Rational& moment(const Exponent& e) const;  // throws on degree overflow
  Rational expectation(const Polynomial& p) const;
};

/// All exponents of dimension n with total degree <= d, in graded colex order.
std::vector<Exponent> monomials_up_to(int n, int d);

PseudoExpectation moments_from_measure(const FinitelySupportedMeasure& mu, int d);

struct ValidationReport {
  bool normalized = false;
  double min_eigenvalue = 0.0;
  bool valid = false;
};

/// Normalization plus floating-point eigencheck of the exactly-assembled
/// moment matrix (monomials of degree <= floor(d/2)).
ValidationReport validate(const PseudoExpectation& pe, double tol);

/// Scaled default from the moment magnitudes: 1e-8 * (1 + max |moment|).
double default_psd_tolerance(const PseudoExpectation& pe);

enum class ConstraintRel { Geq, Eq };

/// Localized-moment-matrix test for "q >= 0" (or "q = 0" via both signs).
bool satisfies_constraint(const PseudoExpectation& pe, const Polynomial& q, ConstraintRel rel,
                          double tol);

/// Simplex constraints plus every approximate-equilibrium inequality of the
/// game, checked through satisfies_constraint. Requires d >= 4 so the
/// quadratic constraints admit a nontrivial localization.
bool is_pseudo_equilibrium(const PseudoExpectation& pe, const BimatrixGame& game,
                           const Rational& eps, double tol);

/// Moment table of the image measure under a polynomial map of degree t;
/// output degree is floor(d / t), computed by exact expansion.
PseudoExpectation pushforward(const PseudoExpectation& pe, const PolynomialMap& map);

/// Reweighting by p^2: atom weights scale with p(point)^2 and renormalize;
/// zero-weight atoms are dropped. Throws when the normalizer vanishes.
FinitelySupportedMeasure reweight(const FinitelySupportedMeasure& mu, const Polynomial& p);

/// Cauchy-Schwarz probe: E[fg]^2 <= E[f^2] E[g^2], exact comparison.
bool holder_cs_check(const PseudoExpectation& pe, const Polynomial& f, const Polynomial& g);

/// Holder probe with even exponents p, q: E[fg]^(pq) <= E[f^p]^q E[g^q]^p.
bool holder_cs_check(const PseudoExpectation& pe, const Polynomial& f, const Polynomial& g,
                     unsigned p, unsigned q);

}  // namespace nashkit
