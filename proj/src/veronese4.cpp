#include "acm/veronese4.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "acm/field.hpp"
#include "json.hpp"

namespace acm {

namespace {

// ch_0..ch_n as exact rationals.
std::array<cpp_rational, 4> ch_vector(const ChernData& e) {
  cpp_rational c1 = e.c1, c2 = e.c2, c3 = e.c3;
  std::array<cpp_rational, 4> ch{};
  ch[0] = e.r;
  ch[1] = c1;
  ch[2] = (c1 * c1 - 2 * c2) / 2;
  ch[3] = (c1 * c1 * c1 - 3 * c1 * c2 + 3 * c3) / 6;
  return ch;
}

cpp_rational chi_of_ch(int n, const std::array<cpp_rational, 4>& ch) {
  if (n == 2) return ch[0] + cpp_rational(3, 2) * ch[1] + ch[2];
  if (n == 3) return ch[0] + cpp_rational(11, 6) * ch[1] + 2 * ch[2] + ch[3];
  throw std::invalid_argument("chi: only P^2 and P^3 are supported");
}

}  // namespace

cpp_rational chi_twist(const ChernData& e, long long t) {
  auto ch = ch_vector(e);
  std::array<cpp_rational, 4> tw{};  // ch(E) * exp(tH)
  cpp_rational tt = t;
  tw[0] = ch[0];
  tw[1] = ch[1] + ch[0] * tt;
  tw[2] = ch[2] + ch[1] * tt + ch[0] * tt * tt / 2;
  tw[3] = ch[3] + ch[2] * tt + ch[1] * tt * tt / 2 + ch[0] * tt * tt * tt / 6;
  return chi_of_ch(e.n, tw);
}

cpp_rational chi_pair(const ChernData& e, const ChernData& f) {
  if (e.n != f.n) throw std::invalid_argument("chi_pair: mixed ambient spaces");
  auto a = ch_vector(e);
  auto b = ch_vector(f);
  for (int i = 1; i <= 3; i += 2) a[i] = -a[i];  // ch(E^dual)
  std::array<cpp_rational, 4> p{};
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) p[i + j] += a[i] * b[j];
  return chi_of_ch(e.n, p);
}

cpp_rational discriminant(const ChernData& e) {
  if (e.n != 2) throw std::invalid_argument("discriminant: defined on P^2 only");
  cpp_rational r = e.r, c1 = e.c1, c2 = e.c2;
  return c1 * c1 * (1 - r) + r * (2 * c2 + r / 4);
}

TwistReport find_acm_twist(const ChernData& e, int d) {
  if (e.n != 2) throw std::invalid_argument("find_acm_twist: defined on P^2 only");
  if (e.r <= 0) throw std::invalid_argument("find_acm_twist: need positive rank");
  if (d < 1) throw std::invalid_argument("find_acm_twist: need d >= 1");
  TwistReport rep;
  rep.delta = discriminant(e);
  // chi(E(t)) is quadratic in t with leading coefficient r/2 > 0, so the
  // negative values sit in one interval around the vertex.
  cpp_rational vertex = -(cpp_rational(e.c1) / e.r + cpp_rational(3, 2));
  long long mid = (long long)std::floor((double)vertex);
  for (long long t = mid; chi_twist(e, t) < 0; --t) rep.bad.push_back((int)t);
  for (long long t = mid + 1; chi_twist(e, t) < 0; ++t) rep.bad.push_back((int)t);
  std::sort(rep.bad.begin(), rep.bad.end());
  for (int t0 = 0; t0 < d || rep.bad.empty(); ++t0) {
    bool hit = false;
    for (int b : rep.bad)
      if (((b - t0) % d + d) % d == 0) hit = true;
    if (!hit) {
      rep.t = t0;
      return rep;
    }
  }
  throw CertificationError("find_acm_twist: every residue class mod d is obstructed");
}

std::string twist_report_to_json(const TwistReport& r) {
  nlohmann::json j;
  j["t"] = r.t;
  j["bad_twists"] = r.bad;
  j["delta"] = r.delta.str();
  return j.dump(2);
}

}  // namespace acm
