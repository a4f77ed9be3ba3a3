#pragma once

#include <cstdint>

#include "nashkit/rational.hpp"

namespace nashkit {

// Counter-based stream: the state is a pure function of (seed, stream, counter),
// so parallel trials keyed by trial index reproduce serial output exactly.
// Mixer is splitmix64 (Steele, Lea, Flood; public domain reference constants).
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  uint64_t next_u64() {
    uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (++counter_);
    z ^= stream_ * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = n * (UINT64_MAX / n);
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  bool coin() { return (next_u64() & 1u) != 0; }

  /// Uniform rational in [0, 1) with denominator 2^64.
  Rational unit_rational() {
    static const BigInt two64 = BigInt(1) << 64;
    BigInt num;
    uint64_t v = next_u64();
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    Rational r(num, two64);
    r.canonicalize();
    return r;
  }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

}  // namespace nashkit
