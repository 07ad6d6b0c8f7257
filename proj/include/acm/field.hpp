#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace acm {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

enum class FieldKind { Prime, Rational };

/// Prime field F_p with p an odd prime, 10^9 < p < 2^30.  Keeping p below
/// 2^30 lets products of two residues fit in 60 bits, so rank kernels can
/// accumulate a few terms before reducing.
struct PrimeField {
  u64 p = 0;
  u64 barrett = 0;  // floor(2^64 / p)

  PrimeField() = default;
  explicit PrimeField(u64 prime) : p(prime) {
    if (p < 3) throw std::invalid_argument("PrimeField: prime too small");
    barrett = ~u64(0) / p;
  }

  // valid for x < 2^63; result in [0, p)
  u64 reduce(u64 x) const {
    u64 q = (u64)(((u128)x * barrett) >> 64);
    u64 r = x - q * p;
    while (r >= p) r -= p;  // q underestimates x/p by at most 2
    return r;
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 mul(u64 a, u64 b) const { return reduce(a * b); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return pow(a, p - 2);
  }
  u64 from_int(long long v) const {
    long long m = v % (long long)p;
    if (m < 0) m += (long long)p;
    return (u64)m;
  }
};

bool is_prime_u64(u64 n);

/// Deterministic random prime in (10^9, 2^30), derived from the run seed.
PrimeField random_prime_field(u64 seed);

struct ResourceError : std::runtime_error {
  long long size = 0;
  ResourceError(const std::string& what, long long sz)
      : std::runtime_error(what + " (size " + std::to_string(sz) + ")"), size(sz) {}
};

struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run-wide configuration: field choice, seed-derived prime, resource guards.
struct Context {
  FieldKind kind = FieldKind::Prime;
  u64 seed = 1;
  PrimeField fp;

  // guards
  int max_dense = 5000;                    // largest dense rank dimension
  long long max_cells = 400'000'000;       // sparse cell guard
  enum class CechEngine { Auto, Brute, Transfer } engine = CechEngine::Auto;
  int brute_threshold = 2500;              // Auto: brute-force below this size

  static Context make(FieldKind kind, u64 seed) {
    Context c;
    c.kind = kind;
    c.seed = seed;
    c.fp = random_prime_field(seed);
    return c;
  }
};

}  // namespace acm
