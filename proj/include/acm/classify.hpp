#pragma once

#include "acm/cech.hpp"
#include "acm/complex.hpp"

namespace acm {

/// Smallest certified Castelnuovo-Mumford regularity of H^0(C): the returned
/// r satisfies h^j(C(r-j)) = 0 for all j >= 1, which propagates upward.
int find_regularity(const FreeComplex& c, const Context& ctx);

/// Twists C so that h^0 just becomes nonzero: returns (C(s), s) with
/// h^0(C(s)) != 0 and h^0(C(s-1)) = 0.
std::pair<FreeComplex, int> normalize(const FreeComplex& c, const Context& ctx);

struct BeilinsonTable {
  int n = 2;
  std::map<std::pair<int, int>, long long> alpha;  // (i, j) -> h^i(C(-j)), j = 0..n+1
  long long at(int i, int j) const {
    auto it = alpha.find({i, j});
    return it == alpha.end() ? 0 : it->second;
  }
};

/// Requires a normalized input.
BeilinsonTable beilinson_table(const FreeComplex& c, const Context& ctx);

enum class BundleCase { LineBundle, SteinerE, SteinerDual };

struct ClassificationResult {
  BundleCase c = BundleCase::LineBundle;
  long long a = 0, b = 0;  // presentation Omega^2(1)^b -> O(-1)^a (up to dual/twist)
  int s = 0;               // normalizing twist
  std::vector<std::pair<int, long long>> rigid;  // (k, multiplicity)
  std::vector<std::string> warnings;
};

/// Classifies an ACM bundle on the relevant Veronese embedding of P^n via its
/// Beilinson table; throws CertificationError if no branch applies.
ClassificationResult classify(const FreeComplex& c, const Context& ctx);

struct AcmReport {
  bool ok = false;
  std::vector<std::pair<int, int>> bad;  // (i, t) with 0 < i < n, t in dZ, h^i != 0
  CohomologyTable table;                 // certificate window
  int reg_upper = 0, reg_dual = 0;
};

/// Checks vanishing of middle cohomology at all twists divisible by d; the
/// search window is certified by regularity of C and its dual plus Serre
/// duality, padded by one.
AcmReport acm_check(const FreeComplex& c, int d, const Context& ctx);

struct RigidComponent {
  int k = 0;
  long long mult = 0;
  int twist = 0;
  bool dual_family = false;
};

/// Expresses the bundle as a twisted sum of members of the E-family (or its
/// duals), combining classify with the arithmetic decomposition.
std::vector<RigidComponent> rigid_decompose(const FreeComplex& c, const Context& ctx);

std::string classification_to_json(const ClassificationResult& r);

}  // namespace acm
