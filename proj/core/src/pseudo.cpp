#include "nashkit/pseudo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace nashkit {

unsigned total_degree(const Exponent& e) {
  unsigned t = 0;
  for (unsigned v : e) t += v;
  return t;
}

Polynomial Polynomial::constant(int n_vars, const Rational& c) {
  Polynomial p(n_vars);
  p.add_term(Exponent(n_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) throw std::invalid_argument("variable index out of range");
  Polynomial p(n_vars);
  Exponent e(n_vars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& coeff) {
  if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent arity mismatch");
  if (coeff == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (n_ != other.n_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  if (n_ != other.n_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, Rational(-c));
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (n_ != other.n_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial out(n_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) {
      Exponent e(n_);
      for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, Rational(c1 * c2));
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out = Polynomial::constant(n_, Rational(1));
  Polynomial acc = *this;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) out = out * acc;
    acc = acc * acc;
    e >>= 1u;
  }
  return out;
}

Rational Polynomial::eval(const RatVec& point) const {
  if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("point arity mismatch");
  Rational out(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i) {
      if (e[i] > 0) term *= rational_pow(point[i], e[i]);
    }
    out += term;
  }
  return out;
}

int PolynomialMap::degree() const {
  int d = 1;
  for (const auto& f : components) d = std::max(d, f.degree());
  return d;
}

FinitelySupportedMeasure::FinitelySupportedMeasure(
    int dim, std::vector<std::pair<Rational, RatVec>> atom_list)
    : n(dim), atoms(std::move(atom_list)) {
  Rational sum(0);
  for (const auto& [w, x] : atoms) {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("atom dimension mismatch");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("measure weights must sum to exactly 1");
}

bool FinitelySupportedMeasure::all_weights_nonnegative() const {
  for (const auto& [w, x] : atoms) {
    if (w < 0) return false;
  }
  return true;
}

const Rational& PseudoExpectation::moment(const Exponent& e) const {
  auto it = moments.find(e);
  if (it == moments.end()) throw std::out_of_range("moment degree exceeds table degree");
  return it->second;
}

Rational PseudoExpectation::expectation(const Polynomial& p) const {
  if (p.n_vars() != n) throw std::invalid_argument("polynomial arity mismatch");
  Rational out(0);
  for (const auto& [e, c] : p.terms()) out += c * moment(e);
  return out;
}

namespace {

// Graded colex: total degree first, then the last differing coordinate decides.
bool graded_colex_less(const Exponent& a, const Exponent& b) {
  unsigned ta = total_degree(a), tb = total_degree(b);
  if (ta != tb) return ta < tb;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void enumerate_exponents(int n, int d, int pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= d; ++v) {
    cur[pos] = v;
    enumerate_exponents(n, d - v, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponent> monomials_up_to(int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("monomials_up_to: bad arity or degree");
  std::vector<Exponent> out;
  Exponent cur(n, 0);
  enumerate_exponents(n, d, 0, cur, out);
  std::sort(out.begin(), out.end(), graded_colex_less);
  return out;
}

PseudoExpectation moments_from_measure(const FinitelySupportedMeasure& mu, int d) {
  if (d < 0) throw std::invalid_argument("moments_from_measure: negative degree");
  PseudoExpectation pe;
  pe.n = mu.n;
  pe.d = d;
  const auto exps = monomials_up_to(mu.n, d);
  for (const auto& e : exps) pe.moments.emplace(e, Rational(0));

  for (const auto& [w, point] : mu.atoms) {
    // powers[i][t] = point[i]^t
    std::vector<RatVec> powers(mu.n);
    for (int i = 0; i < mu.n; ++i) {
      powers[i].resize(d + 1);
      powers[i][0] = 1;
      for (int t = 1; t <= d; ++t) powers[i][t] = Rational(powers[i][t - 1] * point[i]);
    }
    for (const auto& e : exps) {
      Rational val = w;
      for (int i = 0; i < mu.n; ++i) {
        if (e[i] > 0) val *= powers[i][e[i]];
      }
      pe.moments[e] += val;
    }
  }
  return pe;
}

namespace {

double min_eigenvalue_of(const std::vector<std::vector<Rational>>& m) {
  const int s = static_cast<int>(m.size());
  if (s == 0) return 0.0;
  Eigen::MatrixXd mat(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) mat(i, j) = to_double(m[i][j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

}  // namespace

ValidationReport validate(const PseudoExpectation& pe, double tol) {
  ValidationReport rep;
  Exponent one(pe.n, 0);
  rep.normalized = (pe.moment(one) == 1);

  const auto basis = monomials_up_to(pe.n, pe.d / 2);
  std::vector<std::vector<Rational>> m(basis.size(), std::vector<Rational>(basis.size()));
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = a; b < basis.size(); ++b) {
      Exponent e(pe.n);
      for (int i = 0; i < pe.n; ++i) e[i] = basis[a][i] + basis[b][i];
      m[a][b] = pe.moment(e);
      m[b][a] = m[a][b];
    }
  }
  rep.min_eigenvalue = min_eigenvalue_of(m);
  rep.valid = rep.normalized && rep.min_eigenvalue >= -tol;
  return rep;
}

double default_psd_tolerance(const PseudoExpectation& pe) {
  double max_abs = 0.0;
  for (const auto& [e, v] : pe.moments) max_abs = std::max(max_abs, std::abs(to_double(v)));
  return 1e-8 * (1.0 + max_abs);
}

bool satisfies_constraint(const PseudoExpectation& pe, const Polynomial& q, ConstraintRel rel,
                          double tol) {
  if (q.n_vars() != pe.n) throw std::invalid_argument("constraint arity mismatch");
  const int dq = q.degree();
  if (dq > pe.d) throw std::invalid_argument("constraint degree exceeds table degree");

  auto localized_psd = [&](const Polynomial& poly) {
    const int loc = (pe.d - poly.degree()) / 2;
    const auto basis = monomials_up_to(pe.n, loc);
    std::vector<std::vector<Rational>> m(basis.size(), std::vector<Rational>(basis.size()));
    for (size_t a = 0; a < basis.size(); ++a) {
      for (size_t b = a; b < basis.size(); ++b) {
        Rational entry(0);
        for (const auto& [e, c] : poly.terms()) {
          Exponent full(pe.n);
          for (int i = 0; i < pe.n; ++i) full[i] = basis[a][i] + basis[b][i] + e[i];
          entry += c * pe.moment(full);
        }
        m[a][b] = entry;
        m[b][a] = entry;
      }
    }
    return min_eigenvalue_of(m) >= -tol;
  };

  if (rel == ConstraintRel::Geq) return localized_psd(q);
  Polynomial neg = Polynomial::constant(pe.n, Rational(0)) - q;
  return localized_psd(q) && localized_psd(neg);
}

bool is_pseudo_equilibrium(const PseudoExpectation& pe, const BimatrixGame& game,
                           const Rational& eps, double tol) {
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  if (pe.d < 4) {
    throw std::invalid_argument(
        "is_pseudo_equilibrium needs degree >= 4 (quadratic constraints need localization room)");
  }
  const int n = game.n_rows(), m = game.n_cols();
  if (pe.n != n + m) throw std::invalid_argument("table dimension must be n_rows + n_cols");

  auto x_var = [&](int i) { return Polynomial::variable(pe.n, i); };
  auto y_var = [&](int j) { return Polynomial::variable(pe.n, n + j); };

  Polynomial sum_x(pe.n), sum_y(pe.n);
  for (int i = 0; i < n; ++i) sum_x = sum_x + x_var(i);
  for (int j = 0; j < m; ++j) sum_y = sum_y + y_var(j);
  const Polynomial one = Polynomial::constant(pe.n, Rational(1));

  if (!satisfies_constraint(pe, sum_x - one, ConstraintRel::Eq, tol)) return false;
  if (!satisfies_constraint(pe, sum_y - one, ConstraintRel::Eq, tol)) return false;
  for (int i = 0; i < n; ++i) {
    if (!satisfies_constraint(pe, x_var(i), ConstraintRel::Geq, tol)) return false;
  }
  for (int j = 0; j < m; ++j) {
    if (!satisfies_constraint(pe, y_var(j), ConstraintRel::Geq, tol)) return false;
  }

  Polynomial xRy(pe.n), xCy(pe.n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      Exponent e(pe.n, 0);
      e[i] = 1;
      e[n + j] = 1;
      xRy.add_term(e, game.R()[i][j]);
      xCy.add_term(e, game.C()[i][j]);
    }
  }
  const Polynomial eps_poly = Polynomial::constant(pe.n, eps);

  for (int i = 0; i < n; ++i) {
    Polynomial row_i(pe.n);  // e_i^T R y
    for (int j = 0; j < m; ++j) {
      Exponent e(pe.n, 0);
      e[n + j] = 1;
      row_i.add_term(e, game.R()[i][j]);
    }
    if (!satisfies_constraint(pe, xRy - row_i + eps_poly, ConstraintRel::Geq, tol)) return false;
  }
  for (int j = 0; j < m; ++j) {
    Polynomial col_j(pe.n);  // x^T C e_j
    for (int i = 0; i < n; ++i) {
      Exponent e(pe.n, 0);
      e[i] = 1;
      col_j.add_term(e, game.C()[i][j]);
    }
    if (!satisfies_constraint(pe, xCy - col_j + eps_poly, ConstraintRel::Geq, tol)) return false;
  }
  return true;
}

PseudoExpectation pushforward(const PseudoExpectation& pe, const PolynomialMap& map) {
  if (map.n_in != pe.n) throw std::invalid_argument("map input arity mismatch");
  const int t = map.degree();
  const int d_out = pe.d / t;

  PseudoExpectation out;
  out.n = map.n_out();
  out.d = d_out;

  // Cache powers of each component up to d_out.
  std::vector<std::vector<Polynomial>> powers(map.n_out());
  for (int j = 0; j < map.n_out(); ++j) {
    powers[j].push_back(Polynomial::constant(pe.n, Rational(1)));
    for (int p = 1; p <= d_out; ++p) {
      powers[j].push_back(powers[j][p - 1] * map.components[j]);
    }
  }

  for (const auto& e : monomials_up_to(out.n, d_out)) {
    Polynomial expanded = Polynomial::constant(pe.n, Rational(1));
    for (int j = 0; j < out.n; ++j) {
      if (e[j] > 0) expanded = expanded * powers[j][e[j]];
    }
    if (expanded.degree() > pe.d) {
      throw std::invalid_argument("pushforward: required input degree exceeds table degree");
    }
    out.moments.emplace(e, pe.expectation(expanded));
  }
  return out;
}

FinitelySupportedMeasure reweight(const FinitelySupportedMeasure& mu, const Polynomial& p) {
  if (p.n_vars() != mu.n) throw std::invalid_argument("reweight: polynomial arity mismatch");
  std::vector<std::pair<Rational, RatVec>> atoms;
  Rational normalizer(0);
  std::vector<Rational> scaled;
  scaled.reserve(mu.atoms.size());
  for (const auto& [w, x] : mu.atoms) {
    Rational v = p.eval(x);
    Rational s = w * v * v;
    normalizer += s;
    scaled.push_back(std::move(s));
  }
  if (normalizer == 0) throw std::invalid_argument("reweight: vanishing normalizer");
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    if (scaled[i] == 0) continue;
    atoms.push_back({Rational(scaled[i] / normalizer), mu.atoms[i].second});
  }
  return FinitelySupportedMeasure(mu.n, std::move(atoms));
}

bool holder_cs_check(const PseudoExpectation& pe, const Polynomial& f, const Polynomial& g) {
  const int d = std::max(f.degree(), g.degree());
  if (pe.d < 4 * d) throw std::invalid_argument("cauchy-schwarz check needs degree >= 4*deg");
  const Rational lhs = pe.expectation(f * g);
  return lhs * lhs <= pe.expectation(f * f) * pe.expectation(g * g);
}

bool holder_cs_check(const PseudoExpectation& pe, const Polynomial& f, const Polynomial& g,
                     unsigned p, unsigned q) {
  if (p < 2 || q < 2 || p % 2 != 0 || q % 2 != 0) {
    throw std::invalid_argument("holder check needs even exponents p, q >= 2");
  }
  const int d = std::max(f.degree(), g.degree());
  if (pe.d < static_cast<int>(2 * d * p * q)) {
    throw std::invalid_argument("holder check needs degree >= 2*deg*p*q");
  }
  const Rational lhs = rational_pow(pe.expectation(f * g), p * q);
  const Rational rhs =
      rational_pow(pe.expectation(f.pow(p)), q) * rational_pow(pe.expectation(g.pow(q)), p);
  return lhs <= rhs;
}

}  // namespace nashkit
