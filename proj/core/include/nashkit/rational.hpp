#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace nashkit {

// All game arithmetic is exact. Rational is GMP's canonical p/q with q > 0
// and gcd(p, q) = 1; arithmetic and comparisons preserve canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Builds the canonical rational p/q. Throws on q = 0.
Rational make_rational(long p, long q);

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form, denominator always printed ("3" serializes as "3/1").
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational rational_pow(const Rational& base, unsigned exponent);

/// Smallest binary rational a/2^32 with (a/2^32)^2 >= eps. Requires eps >= 0.
/// Over-approximates sqrt(eps) by less than 2^-32.
Rational sqrt_upper_bound(const Rational& eps);

Rational l1_distance(const RatVec& a, const RatVec& b);

Rational abs(const Rational& r);

}  // namespace nashkit
