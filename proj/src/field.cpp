#include "acm/field.hpp"

namespace acm {

static u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

static u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic for n < 3.2e18
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField random_prime_field(u64 seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const u64 lo = 1'000'000'001ull;
  const u64 hi = (1ull << 30) - 1;  // keep residue products in 60 bits
  std::uniform_int_distribution<u64> dist(lo, hi);
  for (int tries = 0; tries < 100000; ++tries) {
    u64 cand = dist(rng) | 1;
    if (is_prime_u64(cand)) return PrimeField(cand);
  }
  throw std::runtime_error("random_prime_field: no prime found");
}

}  // namespace acm
