#include "acm/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "acm/fib.hpp"
#include "json.hpp"

namespace acm {

Poly Poly::constant(long long c) {
  Poly p;
  if (c) p.t.push_back({mono_zero(), c});
  return p;
}

Poly Poly::variable(int i, long long c) {
  Poly p;
  if (c) p.t.push_back({mono_var(i), c});
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  std::vector<std::pair<Mono, long long>> out;
  out.reserve(t.size() + o.t.size());
  size_t i = 0, j = 0;
  while (i < t.size() || j < o.t.size()) {
    if (j == o.t.size() || (i < t.size() && t[i].first < o.t[j].first)) {
      out.push_back(t[i++]);
    } else if (i == t.size() || o.t[j].first < t[i].first) {
      out.push_back(o.t[j++]);
    } else {
      long long c = t[i].second + o.t[j].second;
      if (c) out.push_back({t[i].first, c});
      ++i, ++j;
    }
  }
  t = std::move(out);
  return *this;
}

Poly Poly::operator*(long long c) const {
  Poly p;
  if (!c) return p;
  p.t = t;
  for (auto& [m, v] : p.t) v *= c;
  return p;
}

void SparsePolyMat::add(int r, int c, const Poly& p) {
  if (p.zero()) return;
  auto it = e.find({r, c});
  if (it == e.end()) {
    e.emplace(std::make_pair(r, c), p);
  } else {
    it->second += p;
    if (it->second.zero()) e.erase(it);
  }
}

const Poly* SparsePolyMat::get(int r, int c) const {
  auto it = e.find({r, c});
  return it == e.end() ? nullptr : &it->second;
}

long long FreeComplex::total_copies() const {
  long long s = 0;
  for (auto& [p, tw] : terms) s += (long long)tw.size();
  return s;
}

FreeComplex line_bundle(int n, int t) {
  FreeComplex c;
  c.n = n;
  c.terms[0] = {t};
  return c;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if ((int)cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

int subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
  auto it = std::lower_bound(list.begin(), list.end(), s);
  return (int)(it - list.begin());
}

}  // namespace

FreeComplex koszul_model(int n, int p, int t) {
  FreeComplex c;
  c.n = n;
  std::vector<std::vector<std::vector<int>>> subs(p + 1);
  for (int q = 0; q <= p; ++q) {
    subs[q] = subsets_of_size(n, p - q);
    c.terms[q] = std::vector<int>(subs[q].size(), t - p + q);
  }
  for (int q = 0; q + 1 <= p; ++q) {
    SparsePolyMat d;
    d.rows = (int)subs[q + 1].size();
    d.cols = (int)subs[q].size();
    for (int col = 0; col < d.cols; ++col) {
      const auto& T = subs[q][col];
      for (size_t j = 0; j < T.size(); ++j) {
        std::vector<int> rest;
        for (size_t k = 0; k < T.size(); ++k)
          if (k != j) rest.push_back(T[k]);
        int row = subset_index(subs[q + 1], rest);
        d.add(row, col, Poly::variable(T[j], (j % 2 == 0) ? 1 : -1));
      }
    }
    c.diffs[q] = std::move(d);
  }
  return c;
}

FreeComplex realize_phi(const KroneckerRep& rep, int n) {
  int l = arrows_for(n);
  if (rep.l != l) throw std::invalid_argument("realize_phi: arrow count mismatch");
  int a = (int)rep.dims.a, b = (int)rep.dims.b;
  auto pairs = subsets_of_size(n, 2);  // arrow alpha <-> pair (i < j), lex
  FreeComplex c;
  c.n = n;
  c.terms[-1] = std::vector<int>(a, -1);
  c.terms[0] = std::vector<int>((size_t)b * (n + 1), 0);
  c.terms[1] = std::vector<int>(b, 1);

  SparsePolyMat dm1;
  dm1.rows = b * (n + 1);
  dm1.cols = a;
  for (int s = 0; s < a; ++s)
    for (int beta = 0; beta < b; ++beta)
      for (int al = 0; al < l; ++al) {
        long long coef = (long long)rep.mats[al][(size_t)beta * a + s];
        if (!coef) continue;
        int i0 = pairs[al][0], j0 = pairs[al][1];
        // row of the skew matrix e_{i0} ^ e_{j0} applied to (x_0..x_n)
        dm1.add(beta * (n + 1) + i0, s, Poly::variable(j0, coef));
        dm1.add(beta * (n + 1) + j0, s, Poly::variable(i0, -coef));
      }
  c.diffs[-1] = std::move(dm1);

  SparsePolyMat d0;
  d0.rows = b;
  d0.cols = b * (n + 1);
  for (int beta = 0; beta < b; ++beta)
    for (int i = 0; i <= n; ++i) d0.add(beta, beta * (n + 1) + i, Poly::variable(i));
  c.diffs[0] = std::move(d0);
  return c;
}

FreeComplex twist(const FreeComplex& c, int s) {
  FreeComplex o = c;
  for (auto& [p, tw] : o.terms)
    for (int& t : tw) t += s;
  return o;
}

FreeComplex shift(const FreeComplex& c, int j) {
  FreeComplex o;
  o.n = c.n;
  for (auto& [p, tw] : c.terms) o.terms[p - j] = tw;
  for (auto& [p, d] : c.diffs) {
    SparsePolyMat nd = d;
    if (j % 2 != 0)
      for (auto& [rc, poly] : nd.e) poly = poly * -1;
    o.diffs[p - j] = std::move(nd);
  }
  return o;
}

FreeComplex dual(const FreeComplex& c) {
  FreeComplex o;
  o.n = c.n;
  for (auto& [p, tw] : c.terms) {
    std::vector<int> neg(tw.size());
    for (size_t i = 0; i < tw.size(); ++i) neg[i] = -tw[i];
    o.terms[-p] = std::move(neg);
  }
  for (auto& [p, d] : c.diffs) {
    // d: C^p -> C^{p+1} transposes to dual^{-p-1} -> dual^{-p}
    SparsePolyMat nd;
    nd.rows = d.cols;
    nd.cols = d.rows;
    for (auto& [rc, poly] : d.e) nd.add(rc.second, rc.first, poly);
    o.diffs[-p - 1] = std::move(nd);
  }
  return o;
}

FreeComplex direct_sum(const FreeComplex& c, const FreeComplex& d) {
  if (c.n != d.n) throw std::invalid_argument("direct_sum: different ambient spaces");
  FreeComplex o;
  o.n = c.n;
  std::map<int, int> coff, doff;
  std::set<int> degs;
  for (auto& [p, tw] : c.terms) degs.insert(p);
  for (auto& [p, tw] : d.terms) degs.insert(p);
  for (int p : degs) {
    std::vector<int> tw;
    auto ic = c.terms.find(p);
    auto id = d.terms.find(p);
    coff[p] = 0;
    if (ic != c.terms.end()) tw.insert(tw.end(), ic->second.begin(), ic->second.end());
    doff[p] = (int)tw.size();
    if (id != d.terms.end()) tw.insert(tw.end(), id->second.begin(), id->second.end());
    o.terms[p] = std::move(tw);
  }
  for (int p : degs) {
    if (!o.terms.count(p + 1) && !degs.count(p + 1)) continue;
    SparsePolyMat nd;
    nd.rows = o.terms.count(p + 1) ? (int)o.terms[p + 1].size() : 0;
    nd.cols = (int)o.terms[p].size();
    bool any = false;
    if (auto it = c.diffs.find(p); it != c.diffs.end()) {
      for (auto& [rc, poly] : it->second.e) nd.add(rc.first, rc.second, poly), any = true;
    }
    if (auto it = d.diffs.find(p); it != d.diffs.end()) {
      int ro = 0, co = doff[p];
      if (auto jt = c.terms.find(p + 1); jt != c.terms.end()) ro = (int)jt->second.size();
      for (auto& [rc, poly] : it->second.e) nd.add(rc.first + ro, rc.second + co, poly), any = true;
    }
    if (any) o.diffs[p] = std::move(nd);
  }
  return o;
}

FreeComplex tensor(const FreeComplex& c, const FreeComplex& d) {
  if (c.n != d.n) throw std::invalid_argument("tensor: different ambient spaces");
  FreeComplex o;
  o.n = c.n;
  // block offsets: for total degree m, blocks (p, m-p) ordered by p
  std::map<int, std::map<int, int>> offset;  // m -> p -> first index
  for (auto& [p, ctw] : c.terms)
    for (auto& [q, dtw] : d.terms) {
      int m = p + q;
      auto& tw = o.terms[m];
      offset[m][p] = (int)tw.size();
      for (int u : ctw)
        for (int v : dtw) tw.push_back(u + v);
    }
  auto block_at = [&](int m, int p) -> int {
    auto im = offset.find(m);
    if (im == offset.end()) return -1;
    auto ip = im->second.find(p);
    return ip == im->second.end() ? -1 : ip->second;
  };
  for (auto& [p, ctw] : c.terms)
    for (auto& [q, dtw] : d.terms) {
      int m = p + q;
      int src = block_at(m, p);
      int nc = (int)dtw.size();
      // d_C (x) id
      if (auto it = c.diffs.find(p); it != c.diffs.end()) {
        int dst = block_at(m + 1, p + 1);
        auto& nd = o.diffs[m];
        nd.rows = (int)o.terms[m + 1].size();
        nd.cols = (int)o.terms[m].size();
        for (auto& [rc, poly] : it->second.e)
          for (int v = 0; v < nc; ++v)
            nd.add(dst + rc.first * nc + v, src + rc.second * nc + v, poly);
      }
      // (-1)^p id (x) d_D
      if (auto it = d.diffs.find(q); it != d.diffs.end()) {
        int dst = block_at(m + 1, p);
        auto& nd = o.diffs[m];
        nd.rows = (int)o.terms[m + 1].size();
        nd.cols = (int)o.terms[m].size();
        int ndc = (int)d.terms.at(q + 1).size();
        long long sgn = (p % 2 == 0) ? 1 : -1;
        for (size_t u = 0; u < ctw.size(); ++u)
          for (auto& [rc, poly] : it->second.e)
            nd.add(dst + (int)u * ndc + rc.first, src + (int)u * nc + rc.second, poly * sgn);
      }
    }
  // drop empty diffs
  for (auto it = o.diffs.begin(); it != o.diffs.end();)
    it = it->second.e.empty() ? o.diffs.erase(it) : std::next(it);
  return o;
}

bool dd_ok(const FreeComplex& c) {
  for (auto& [p, d1] : c.diffs) {
    auto it2 = c.diffs.find(p + 1);
    if (it2 == c.diffs.end()) continue;
    const SparsePolyMat& d2 = it2->second;
    // index d2 by column
    std::map<int, std::vector<std::pair<int, const Poly*>>> bycol;
    for (auto& [rc, poly] : d2.e) bycol[rc.second].push_back({rc.first, &poly});
    std::map<std::pair<int, int>, std::map<Mono, __int128>> acc;
    for (auto& [rc, p1] : d1.e) {
      auto mid = bycol.find(rc.first);
      if (mid == bycol.end()) continue;
      for (auto& [row2, p2] : mid->second)
        for (auto& [m1, c1] : p1.t)
          for (auto& [m2, c2] : p2->t)
            acc[{row2, rc.second}][mono_add(m1, m2)] += (__int128)c1 * c2;
    }
    for (auto& [rc, terms] : acc)
      for (auto& [m, v] : terms)
        if (v != 0) return false;
  }
  return true;
}

FreeComplex minimize(const FreeComplex& c) {
  // working copy with alive flags; cancel unit constant entries
  FreeComplex w = c;
  std::map<int, std::vector<char>> alive;
  for (auto& [p, tw] : w.terms) alive[p] = std::vector<char>(tw.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [p, d] : w.diffs) {
      std::pair<int, int> piv{-1, -1};
      long long pval = 0;
      for (auto& [rc, poly] : d.e) {
        if (!alive[p][rc.second] || !alive[p + 1][rc.first]) continue;
        if (poly.t.size() == 1 && poly.t[0].first == mono_zero() &&
            (poly.t[0].second == 1 || poly.t[0].second == -1)) {
          piv = rc;
          pval = poly.t[0].second;
          break;
        }
      }
      if (piv.first < 0) continue;
      changed = true;
      int r0 = piv.first, c0 = piv.second;
      std::vector<std::pair<int, Poly>> row_entries, col_entries;
      for (auto& [rc, poly] : d.e) {
        if (rc.first == r0 && rc.second != c0 && alive[p][rc.second])
          row_entries.push_back({rc.second, poly});
        if (rc.second == c0 && rc.first != r0 && alive[p + 1][rc.first])
          col_entries.push_back({rc.first, poly});
      }
      for (auto& [r, gamma] : col_entries)
        for (auto& [cc, delta] : row_entries) {
          // epsilon -= gamma * pval^{-1} * delta, pval = +-1
          Poly upd;
          for (auto& [m1, v1] : gamma.t)
            for (auto& [m2, v2] : delta.t) {
              Poly term;
              term.t.push_back({mono_add(m1, m2), -v1 * v2 * pval});
              upd += term;
            }
          d.add(r, cc, upd);
        }
      alive[p][c0] = 0;
      alive[p + 1][r0] = 0;
    }
  }
  // compact
  FreeComplex o;
  o.n = w.n;
  std::map<int, std::vector<int>> remap;
  for (auto& [p, tw] : w.terms) {
    std::vector<int> rm(tw.size(), -1), keep;
    for (size_t i = 0; i < tw.size(); ++i)
      if (alive[p][i]) {
        rm[i] = (int)keep.size();
        keep.push_back(tw[i]);
      }
    remap[p] = std::move(rm);
    if (!keep.empty()) o.terms[p] = std::move(keep);
  }
  for (auto& [p, d] : w.diffs) {
    SparsePolyMat nd;
    nd.rows = o.terms.count(p + 1) ? (int)o.terms[p + 1].size() : 0;
    nd.cols = o.terms.count(p) ? (int)o.terms[p].size() : 0;
    if (nd.rows == 0 || nd.cols == 0) continue;
    for (auto& [rc, poly] : d.e) {
      int r = remap[p + 1][rc.first], cc = remap[p][rc.second];
      if (r >= 0 && cc >= 0) nd.add(r, cc, poly);
    }
    if (!nd.e.empty()) o.diffs[p] = std::move(nd);
  }
  return o;
}

FreeComplex fib_bundle(int n, int k, const Context& ctx) {
  int l = arrows_for(n);
  KroneckerRep rep = rk_rep(l, k, ctx);
  FreeComplex c = realize_phi(rep, n);
  return k >= 1 ? c : shift(c, -1);
}

FreeComplex ek_bundle(int n, int k, const Context& ctx) {
  if (k < 1) throw std::invalid_argument("ek_bundle: need k >= 1");
  int l = arrows_for(n);
  long long ap = (long long)fibonacci(l, k - 1), ak = (long long)fibonacci(l, k);
  if (ap == 0) return line_bundle(n, -1);  // E_1 = O(-1)
  KroneckerRep rep = rk_rep(l, k, ctx);  // constants spanning Hom(Omega^2(1), O(-1))
  FreeComplex A = koszul_model(n, 2, 1);
  FreeComplex c;
  c.n = n;
  int s0 = (int)A.terms[0].size();  // = l
  int s1 = (int)A.terms[1].size();  // = n + 1
  int s2 = (int)A.terms[2].size();  // = 1
  c.terms[-1] = std::vector<int>((size_t)ap * s0, -1);
  c.terms[0] = std::vector<int>((size_t)ap * s1, 0);
  c.terms[0].insert(c.terms[0].end(), (size_t)ak, -1);
  c.terms[1] = std::vector<int>((size_t)ap * s2, 1);

  SparsePolyMat dm1;
  dm1.rows = (int)c.terms[0].size();
  dm1.cols = (int)c.terms[-1].size();
  for (long long beta = 0; beta < ap; ++beta)
    for (auto& [rc, poly] : A.diffs[0].e)
      dm1.add((int)(beta * s1 + rc.first), (int)(beta * s0 + rc.second), poly * -1);
  for (long long m = 0; m < ak; ++m)
    for (long long beta = 0; beta < ap; ++beta)
      for (int al = 0; al < l; ++al) {
        long long v = (long long)rep.mats[al][(size_t)m * ap + beta];
        if (v) dm1.add((int)(ap * s1 + m), (int)(beta * s0 + al), Poly::constant(v));
      }
  c.diffs[-1] = std::move(dm1);

  SparsePolyMat d0;
  d0.rows = (int)c.terms[1].size();
  d0.cols = (int)c.terms[0].size();
  for (long long beta = 0; beta < ap; ++beta)
    for (auto& [rc, poly] : A.diffs[1].e)
      d0.add((int)(beta * s2 + rc.first), (int)(beta * s1 + rc.second), poly * -1);
  c.diffs[0] = std::move(d0);
  return c;
}

ChernData chern(const FreeComplex& c) {
  ChernData out;
  out.n = c.n;
  cpp_rational r = 0, ch1 = 0, ch2 = 0, ch3 = 0;
  for (auto& [p, tw] : c.terms) {
    int sgn = (p % 2 == 0) ? 1 : -1;
    for (int d : tw) {
      r += sgn;
      ch1 += cpp_rational(sgn) * d;
      ch2 += cpp_rational(sgn) * d * d / 2;
      ch3 += cpp_rational(sgn) * d * d * d / 6;
    }
  }
  auto to_int = [](const cpp_rational& q) {
    if (boost::multiprecision::denominator(q) != 1)
      throw std::logic_error("chern: non-integral Chern class");
    return cpp_int(boost::multiprecision::numerator(q));
  };
  out.r = (long long)to_int(r);
  cpp_rational c1 = ch1;
  cpp_rational c2 = (c1 * c1 - 2 * ch2) / 2;
  out.c1 = to_int(c1);
  out.c2 = to_int(c2);
  if (c.n >= 3) out.c3 = to_int((6 * ch3 - c1 * c1 * c1 + 3 * c1 * c2) / 3);
  return out;
}

std::string complex_to_json(const FreeComplex& c) {
  nlohmann::json j;
  j["n"] = c.n;
  nlohmann::json terms = nlohmann::json::object();
  for (auto& [p, tw] : c.terms) {
    nlohmann::json groups = nlohmann::json::array();
    for (size_t i = 0; i < tw.size();) {
      size_t k = i;
      while (k < tw.size() && tw[k] == tw[i]) ++k;
      groups.push_back({{"twist", tw[i]}, {"mult", (int)(k - i)}});
      i = k;
    }
    terms[std::to_string(p)] = groups;
  }
  j["terms"] = terms;
  nlohmann::json diffs = nlohmann::json::object();
  for (auto& [p, d] : c.diffs) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < d.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int cc = 0; cc < d.cols; ++cc) {
        nlohmann::json cell = nlohmann::json::array();
        if (const Poly* poly = d.get(r, cc)) {
          for (auto& [mono, coef] : poly->t) {
            nlohmann::json e = nlohmann::json::array();
            for (int i = 0; i <= c.n; ++i) e.push_back((int)mono[i]);
            cell.push_back({{"coef", std::to_string(coef)}, {"monomial", e}});
          }
        }
        row.push_back(cell);
      }
      m.push_back(row);
    }
    diffs[std::to_string(p)] = m;
  }
  j["diffs"] = diffs;
  return j.dump();
}

FreeComplex complex_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FreeComplex c;
  c.n = j.at("n").get<int>();
  for (auto& [key, groups] : j.at("terms").items()) {
    int p = std::stoi(key);
    std::vector<int> tw;
    for (auto& g : groups)
      for (int i = 0; i < g.at("mult").get<int>(); ++i) tw.push_back(g.at("twist").get<int>());
    c.terms[p] = std::move(tw);
  }
  if (j.contains("diffs"))
    for (auto& [key, m] : j.at("diffs").items()) {
      int p = std::stoi(key);
      SparsePolyMat d;
      d.rows = (int)m.size();
      d.cols = d.rows ? (int)m[0].size() : 0;
      for (int r = 0; r < d.rows; ++r)
        for (int cc = 0; cc < d.cols; ++cc) {
          Poly poly;
          for (auto& term : m[r][cc]) {
            Mono mono = mono_zero();
            auto& e = term.at("monomial");
            for (size_t i = 0; i < e.size() && i < 4; ++i) mono[i] = (int16_t)e[i].get<int>();
            Poly one;
            one.t.push_back({mono, std::stoll(term.at("coef").get<std::string>())});
            poly += one;
          }
          d.add(r, cc, poly);
        }
      c.diffs[p] = std::move(d);
    }
  return c;
}

}  // namespace acm
