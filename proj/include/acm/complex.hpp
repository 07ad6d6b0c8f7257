#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "acm/kron.hpp"
#include "acm/linalg.hpp"

namespace acm {

/// Exponent vector of a monomial in x_0..x_n (n <= 3).
using Mono = std::array<int16_t, 4>;

inline Mono mono_zero() { return {0, 0, 0, 0}; }
inline Mono mono_var(int i) {
  Mono m{0, 0, 0, 0};
  m[i] = 1;
  return m;
}
inline Mono mono_add(const Mono& a, const Mono& b) {
  return {int16_t(a[0] + b[0]), int16_t(a[1] + b[1]), int16_t(a[2] + b[2]),
          int16_t(a[3] + b[3])};
}

/// Homogeneous polynomial with exact integer coefficients, sorted by monomial.
struct Poly {
  std::vector<std::pair<Mono, long long>> t;

  bool zero() const { return t.empty(); }
  static Poly constant(long long c);
  static Poly variable(int i, long long c = 1);
  Poly& operator+=(const Poly& o);
  Poly operator*(long long c) const;
  bool operator==(const Poly&) const = default;
};

struct SparsePolyMat {
  int rows = 0, cols = 0;
  std::map<std::pair<int, int>, Poly> e;

  void add(int r, int c, const Poly& p);
  const Poly* get(int r, int c) const;
};

/// Bounded complex of direct sums of line bundles on P^n.  terms[p] lists the
/// twist of every copy in homological degree p (order matters: it indexes the
/// differentials); diffs[p] maps terms[p] -> terms[p+1] with homogeneous
/// polynomial entries of degree twist(row) - twist(col).
struct FreeComplex {
  int n = 2;
  std::map<int, std::vector<int>> terms;
  std::map<int, SparsePolyMat> diffs;

  long long total_copies() const;
};

FreeComplex line_bundle(int n, int t);

/// Exact Koszul-type complex in degrees 0..p whose H^0 is Omega^p(t):
/// degree q holds O(t-p+q)^binom(n+1, p-q), copies indexed by subsets in lex
/// order, differentials contract with the Euler vector field.
FreeComplex koszul_model(int n, int p, int t);

/// Cone of the tautological map O(-1)^a -> Omega(1)^b induced by a Kronecker
/// representation, realized on the Koszul model of Omega(1) via the
/// skew-matrix lift of Hom(O(-1), Omega(1)) = Lambda^2 V.
FreeComplex realize_phi(const KroneckerRep& rep, int n);

/// k-th bundle of the F-family on P^n as a complex with the sheaf in
/// homological degree 0.
FreeComplex fib_bundle(int n, int k, const Context& ctx);

/// k-th bundle of the E-family (k >= 1): cone of a generic constant map from
/// copies of the Koszul model of Omega^2(1) to O(-1)^{a_k}.
FreeComplex ek_bundle(int n, int k, const Context& ctx);

FreeComplex twist(const FreeComplex& c, int s);
FreeComplex shift(const FreeComplex& c, int j);  // C[j]: term i comes from i+j
FreeComplex dual(const FreeComplex& c);
FreeComplex tensor(const FreeComplex& c, const FreeComplex& d);
FreeComplex direct_sum(const FreeComplex& c, const FreeComplex& d);

/// Checks d o d = 0 exactly over Z.
bool dd_ok(const FreeComplex& c);

/// Cancels +-1 constant entries (Gaussian homotopy equivalence over Z).
FreeComplex minimize(const FreeComplex& c);

struct ChernData {
  int n = 2;
  long long r = 0;
  cpp_int c1, c2, c3;
  bool operator==(const ChernData&) const = default;
};

/// Chern data of the alternating sum of the terms (= of H^0 when the complex
/// is quasi-isomorphic to a sheaf in degree 0).
ChernData chern(const FreeComplex& c);

std::string complex_to_json(const FreeComplex& c);
FreeComplex complex_from_json(const std::string& text);

}  // namespace acm
