#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acm/field.hpp"
#include "acm/linalg.hpp"

namespace acm {

struct DimVector {
  long long a = 0, b = 0;
  bool operator==(const DimVector&) const = default;
};

/// Representation of the l-arrow Kronecker quiver: l matrices of shape b x a
/// (each maps the a-dimensional source space to the b-dimensional target).
/// Entries are exact small integers, interpreted in the context's field.
struct KroneckerRep {
  int l = 0;
  DimVector dims;
  std::vector<std::vector<u64>> mats;  // l matrices, row-major b x a
};

/// Euler form <v,w> = v.a*w.a + v.b*w.b - l*v.a*w.b.
long long euler_form(int l, DimVector v, DimVector w);

struct HomExt {
  long long hom = 0, ext1 = 0;
  std::string strategy;  // which reduction produced the rank
};

/// dim Hom and dim Ext^1 between two representations, via the rank of the
/// two-term Hom complex.  Large instances go through rank reductions; if no
/// strategy fits the resource guards this throws ResourceError.
HomExt hom_ext(const KroneckerRep& R, const KroneckerRep& S, const Context& ctx);

/// Deterministic generic representation of dimension vector v (entries drawn
/// from the seed; byte-identical for equal (seed, l, v)).
KroneckerRep generic_rep(int l, DimVector v, u64 seed, const Context& ctx);

/// Dimension vector of the k-th rigid indecomposable along the Fibonacci
/// fan: (a_{l,k-1}, a_{l,k}) for k >= 1 and (a_{l,1-k}, a_{l,-k}) for k <= 0.
DimVector rk_dims(int l, int k);

/// Generic representation with the dimension vector of rk_dims, certified
/// rigid (ext^1 = 0) when the certification fits the resource guards.  On
/// guard overflow *certified is set false instead of failing.
KroneckerRep rk_rep(int l, int k, const Context& ctx, bool* certified = nullptr);

/// Writes v = r*dim(R_k) + r'*dim(R_{k+1}) with r, r' >= 0 when v is the
/// dimension vector of a rigid representation; nullopt otherwise.  Mixed
/// pairs across k = 0 are not rigid and are excluded.
std::optional<std::vector<std::pair<int, long long>>> kac_decompose(int l, DimVector v);

/// Transpose-dual representation: dims (b, a), matrices transposed.
KroneckerRep transpose_rep(const KroneckerRep& r);

std::string rep_to_json(const KroneckerRep& r);
KroneckerRep rep_from_json(const std::string& text);

}  // namespace acm
