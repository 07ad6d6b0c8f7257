#pragma once

#include "acm/complex.hpp"

namespace acm {

/// Euler characteristic chi(E(t)) by Riemann-Roch (n = 2 or 3).
cpp_rational chi_twist(const ChernData& e, long long t);

/// chi(E, F) = sum (-1)^i dim Ext^i(E, F), via ch(E^dual) ch(F) td(P^n).
cpp_rational chi_pair(const ChernData& e, const ChernData& f);

/// Discriminant c1^2 (1 - r) + r (2 c2 + r/4) on P^2; equals
/// (5/4) r^2 - chi(E, E).
cpp_rational discriminant(const ChernData& e);

struct TwistReport {
  int t = 0;               // smallest t >= 0 whose class mod d avoids all bad twists
  std::vector<int> bad;    // integer twists with chi(E(t)) < 0
  cpp_rational delta;      // discriminant of E
};

/// Numerical ACM-twist selection on P^2 for the degree-d Veronese: lists the
/// (finitely many) twists with negative Euler characteristic and picks the
/// smallest nonnegative residue class mod d missing all of them.
TwistReport find_acm_twist(const ChernData& e, int d);

std::string twist_report_to_json(const TwistReport& r);

}  // namespace acm
