#pragma once

#include <map>
#include <string>
#include <vector>

#include "acm/complex.hpp"

namespace acm {

struct CohomologyTable {
  int n = 2;
  int tmin = 0, tmax = 0;
  std::map<std::pair<int, int>, long long> h;  // (i, t) -> h^i(C(t)), zero entries omitted

  long long at(int i, int t) const {
    auto it = h.find({i, t});
    return it == h.end() ? 0 : it->second;
  }
};

/// Hypercohomology dimensions of C(t) by total degree.  For a complex
/// quasi-isomorphic to a bundle in degree 0 these are the sheaf cohomology
/// dimensions h^i.
std::map<int, long long> hypercohomology(const FreeComplex& c, int t, const Context& ctx);

/// Truncated Cech double complex assembled as one matrix per total degree.
/// M_override replaces the default truncation order (for consistency checks).
std::map<int, long long> hypercohomology_brute(const FreeComplex& c, int t, const Context& ctx,
                                               int m_override = -1);

/// Fast engine: contracts the exact Cech direction per monomial class and
/// transfers the polynomial differential onto the harmonic classes
/// (homological perturbation); no truncation is involved.
std::map<int, long long> hypercohomology_transfer(const FreeComplex& c, int t,
                                                  const Context& ctx);

/// Truncation order used by the brute engine at twist t.
int cech_truncation_order(const FreeComplex& c, int t);

CohomologyTable cohomology_table(const FreeComplex& c, int tmin, int tmax, const Context& ctx);

/// dim Ext^i(H^0(C), H^0(D)) for i = 0..n, via dual(C) (x) D.
std::vector<long long> ext_groups(const FreeComplex& c, const FreeComplex& d, const Context& ctx);

/// Closed form for line bundles: h^i(P^n, O(d)).
long long h_line_bundle(int n, int i, int d);

std::string table_to_json(const CohomologyTable& t);

}  // namespace acm
