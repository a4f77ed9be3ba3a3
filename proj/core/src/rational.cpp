#include "nashkit/rational.hpp"

#include <stdexcept>

namespace nashkit {

Rational make_rational(long p, long q) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  Rational acc = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) out *= acc;
    acc *= acc;
    e >>= 1u;
  }
  return out;
}

Rational sqrt_upper_bound(const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("sqrt_upper_bound of negative value");
  static const BigInt two32 = BigInt(1) << 32;
  static const BigInt two64 = BigInt(1) << 64;
  const BigInt target = eps.get_num() * two64;  // want min a with a^2 * den >= num * 2^64
  const BigInt& den = eps.get_den();

  BigInt quotient = target / den;
  BigInt a;
  mpz_sqrt(a.get_mpz_t(), quotient.get_mpz_t());
  while (a * a * den < target) ++a;
  while (a > 0 && (a - 1) * (a - 1) * den >= target) --a;

  Rational r(a, two32);
  r.canonicalize();
  return r;
}

Rational l1_distance(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
  Rational total(0);
  for (size_t i = 0; i < a.size(); ++i) total += abs(Rational(a[i] - b[i]));
  return total;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace nashkit
