#include "acm/cech.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace acm {

namespace {

// ---------------------------------------------------------------------------
// chain keys: (complex degree p, copy j, Cech subset S, monomial u) packed
// into 64 bits.  u entries are biased by 256.
// ---------------------------------------------------------------------------

u64 ck_encode(int p, int j, unsigned s, const Mono& u) {
  u64 k = 0;
  for (int i = 0; i < 4; ++i) {
    int v = u[i] + 256;
    if (v < 0 || v > 511) throw std::invalid_argument("cech: twist out of supported range");
    k |= (u64)v << (9 * i);
  }
  if (j < 0 || j > 16383) throw std::invalid_argument("cech: too many copies");
  if (p < -31 || p > 31) throw std::invalid_argument("cech: degree out of range");
  k |= (u64)s << 36;
  k |= (u64)j << 41;
  k |= (u64)(p + 32) << 55;
  return k;
}

void ck_decode(u64 k, int& p, int& j, unsigned& s, Mono& u) {
  for (int i = 0; i < 4; ++i) u[i] = (int16_t)(((k >> (9 * i)) & 511) - 256);
  s = (unsigned)((k >> 36) & 31);
  j = (int)((k >> 41) & 16383);
  p = (int)((k >> 55) & 63) - 32;
}

// monomials with per-variable lower bounds and fixed total degree
void enumerate_monomials(int nvars, int total, const int* lb, Mono& cur, int pos,
                         std::vector<Mono>& out) {
  if (pos == nvars - 1) {
    if (total >= lb[pos]) {
      cur[pos] = (int16_t)total;
      out.push_back(cur);
    }
    return;
  }
  for (int v = lb[pos];; ++v) {
    int rest = total - v;
    int minrest = 0;
    for (int i = pos + 1; i < nvars; ++i) minrest += lb[i];
    if (rest < minrest) break;
    cur[pos] = (int16_t)v;
    enumerate_monomials(nvars, rest, lb, cur, pos + 1, out);
  }
}

std::vector<Mono> monomials_sum(int nvars, int total, int lower) {
  std::vector<Mono> out;
  int lb[4] = {lower, lower, lower, lower};
  Mono cur = mono_zero();
  if (nvars < 4)
    for (int i = nvars; i < 4; ++i) cur[i] = 0;
  enumerate_monomials(nvars, total, lb, cur, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// field abstraction for the two scalar modes
// ---------------------------------------------------------------------------

struct CFp {
  PrimeField f;
  using E = u64;
  E from_ll(long long v) const { return f.from_int(v); }
  bool is_zero(const E& x) const { return x == 0; }
  E add(const E& a, const E& b) const { return f.add(a, b); }
  E mul(const E& a, const E& b) const { return f.mul(a, b); }
  E neg(const E& a) const { return f.neg(a); }
  E inv(const E& a) const { return f.inv(a); }
  int rank(int rows, int cols, std::vector<std::tuple<int, int, E>>&& t,
           const Context& ctx) const {
    return rank_triplets_fp(rows, cols, std::move(t), ctx);
  }
};

struct CRat {
  using E = cpp_rational;
  E from_ll(long long v) const { return E(v); }
  bool is_zero(const E& x) const { return x == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const { return 1 / a; }
  int rank(int rows, int cols, std::vector<std::tuple<int, int, E>>&& t,
           const Context& ctx) const {
    return rank_triplets_rational(rows, cols, std::move(t), ctx);
  }
};

template <class Ops>
struct FieldComplex {
  int n = 2;
  std::map<int, std::vector<int>> terms;
  // per degree, per column: (row, monomial, coefficient)
  std::map<int, std::vector<std::vector<std::tuple<int, Mono, typename Ops::E>>>> bycol;
};

/// converts to field coefficients and cancels invertible constant entries
/// (Gaussian homotopy equivalence), which keeps the engines small.
template <class Ops>
FieldComplex<Ops> build_field_complex(const FreeComplex& c, const Ops& ops) {
  using E = typename Ops::E;
  using FPoly = std::vector<std::pair<Mono, E>>;
  std::map<int, std::map<std::pair<int, int>, FPoly>> work;
  for (auto& [p, d] : c.diffs)
    for (auto& [rc, poly] : d.e) {
      FPoly fp;
      for (auto& [m, v] : poly.t) {
        E x = ops.from_ll(v);
        if (!ops.is_zero(x)) fp.push_back({m, x});
      }
      if (!fp.empty()) work[p][rc] = std::move(fp);
    }
  std::map<int, std::vector<char>> alive;
  for (auto& [p, tw] : c.terms) alive[p] = std::vector<char>(tw.size(), 1);

  auto fp_add = [&](FPoly& dst, const Mono& m, const E& v) {
    auto it = std::lower_bound(dst.begin(), dst.end(), m,
                               [](const auto& a, const Mono& mm) { return a.first < mm; });
    if (it != dst.end() && it->first == m) {
      it->second = ops.add(it->second, v);
      if (ops.is_zero(it->second)) dst.erase(it);
    } else {
      dst.insert(it, {m, v});
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [p, entries] : work) {
      std::pair<int, int> piv{-1, -1};
      E pval{};
      for (auto& [rc, fp] : entries) {
        if (!alive[p][rc.second] || !alive[p + 1][rc.first]) continue;
        if (fp.size() == 1 && fp[0].first == mono_zero()) {
          piv = rc;
          pval = fp[0].second;
          break;
        }
      }
      if (piv.first < 0) continue;
      changed = true;
      int r0 = piv.first, c0 = piv.second;
      E pinv = ops.inv(pval);
      std::vector<std::pair<int, FPoly>> row_e, col_e;
      for (auto& [rc, fp] : entries) {
        if (rc.first == r0 && rc.second != c0 && alive[p][rc.second]) row_e.push_back({rc.second, fp});
        if (rc.second == c0 && rc.first != r0 && alive[p + 1][rc.first]) col_e.push_back({rc.first, fp});
      }
      for (auto& [r, gamma] : col_e)
        for (auto& [cc, delta] : row_e) {
          FPoly& dst = entries[{r, cc}];
          for (auto& [m1, v1] : gamma)
            for (auto& [m2, v2] : delta)
              fp_add(dst, mono_add(m1, m2), ops.neg(ops.mul(ops.mul(v1, pinv), v2)));
          if (dst.empty()) entries.erase({r, cc});
        }
      alive[p][c0] = 0;
      alive[p + 1][r0] = 0;
    }
  }

  FieldComplex<Ops> out;
  out.n = c.n;
  std::map<int, std::vector<int>> remap;
  for (auto& [p, tw] : c.terms) {
    std::vector<int> rm(tw.size(), -1), keep;
    for (size_t i = 0; i < tw.size(); ++i)
      if (alive[p][i]) {
        rm[i] = (int)keep.size();
        keep.push_back(tw[i]);
      }
    remap[p] = std::move(rm);
    if (!keep.empty()) out.terms[p] = std::move(keep);
  }
  for (auto& [p, entries] : work) {
    if (!out.terms.count(p) || !out.terms.count(p + 1)) continue;
    auto& cols = out.bycol[p];
    cols.assign(out.terms[p].size(), {});
    for (auto& [rc, fp] : entries) {
      int r = remap[p + 1][rc.first], cc = remap[p][rc.second];
      if (r < 0 || cc < 0) continue;
      for (auto& [m, v] : fp) cols[cc].push_back({r, m, v});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// transfer engine
// ---------------------------------------------------------------------------

template <class Ops>
std::map<int, long long> run_transfer(const FieldComplex<Ops>& fc, int t, const Ops& ops,
                                      const Context& ctx) {
  using E = typename Ops::E;
  const int n = fc.n;
  const unsigned full = (1u << (n + 1)) - 1;

  struct WElem {
    int p, j;
    Mono u;
  };
  std::map<int, std::vector<WElem>> wbasis;
  std::map<int, std::unordered_map<u64, int>> windex;
  for (auto& [p, tw] : fc.terms)
    for (int j = 0; j < (int)tw.size(); ++j) {
      int D = tw[j] + t;
      if (D >= 0) {
        for (auto& u : monomials_sum(n + 1, D, 0)) {
          auto& vec = wbasis[p];
          windex[p][ck_encode(p, j, 0, u)] = (int)vec.size();
          vec.push_back({p, j, u});
        }
      }
    }
  // all-negative classes: substitute u = -w - 1 with w >= 0
  for (auto& [p, tw] : fc.terms)
    for (int j = 0; j < (int)tw.size(); ++j) {
      int D = tw[j] + t;
      if (D > -(n + 1)) continue;
      for (auto& w : monomials_sum(n + 1, -D - (n + 1), 0)) {
        Mono u = mono_zero();
        for (int i = 0; i <= n; ++i) u[i] = (int16_t)(-w[i] - 1);
        int m = p + n;
        auto& vec = wbasis[m];
        windex[m][ck_encode(p, j, 0, u)] = (int)vec.size();
        vec.push_back({p, j, u});
      }
    }
  if (wbasis.empty()) return {};

  using Chain = std::unordered_map<u64, E>;
  auto chain_add = [&](Chain& ch, u64 k, const E& v) {
    auto [it, fresh] = ch.try_emplace(k, v);
    if (!fresh) {
      it->second = ops.add(it->second, v);
      if (ops.is_zero(it->second)) ch.erase(it);
    }
  };

  auto apply_dp = [&](const Chain& ch) {
    Chain out;
    for (auto& [k, val] : ch) {
      int p, j;
      unsigned s;
      Mono u;
      ck_decode(k, p, j, s, u);
      auto it = fc.bycol.find(p);
      if (it == fc.bycol.end()) continue;
      for (auto& [row, mono, coef] : it->second[j])
        chain_add(out, ck_encode(p + 1, row, s, mono_add(u, mono)), ops.mul(val, coef));
    }
    return out;
  };

  auto apply_h = [&](const Chain& ch) {
    Chain out;
    for (auto& [k, val] : ch) {
      int p, j;
      unsigned s;
      Mono u;
      ck_decode(k, p, j, s, u);
      unsigned neg = 0;
      for (int i = 0; i <= n; ++i)
        if (u[i] < 0) neg |= 1u << i;
      if (neg == full) continue;  // harmonic top class
      int v = std::countr_one(neg);  // least i not in N(u)
      if (neg == 0 && std::popcount(s) == 1) continue;  // harmonic bottom class
      if (!((s >> v) & 1)) continue;
      int below = std::popcount(s & ((1u << v) - 1));
      bool negate = ((below + (p & 1)) & 1) != 0;
      E nv = negate ? ops.neg(val) : val;
      chain_add(out, ck_encode(p, j, s & ~(1u << v), u), nv);
    }
    return out;
  };

  std::map<int, long long> rankd;
  for (auto& [m, basis] : wbasis) {
    auto itn = wbasis.find(m + 1);
    if (itn == wbasis.end()) {
      rankd[m] = 0;
      continue;
    }
    std::vector<std::tuple<int, int, E>> trip;
    for (int col = 0; col < (int)basis.size(); ++col) {
      const WElem& e = basis[col];
      Chain y;
      bool top = e.u[0] < 0;  // all-negative class sits at S = full
      if (top) {
        chain_add(y, ck_encode(e.p, e.j, full, e.u), ops.from_ll(1));
      } else {
        for (int i = 0; i <= n; ++i)
          chain_add(y, ck_encode(e.p, e.j, 1u << i, e.u), ops.from_ll(1));
      }
      while (!y.empty()) {
        Chain z = apply_dp(y);
        if (z.empty()) break;
        // project onto harmonic classes of total degree m + 1
        for (auto& [k, val] : z) {
          int p, j;
          unsigned s;
          Mono u;
          ck_decode(k, p, j, s, u);
          unsigned neg = 0;
          for (int i = 0; i <= n; ++i)
            if (u[i] < 0) neg |= 1u << i;
          int row = -1;
          if (neg == 0 && s == 1u) {  // bottom class, distinguished vertex 0
            auto f = windex[p].find(ck_encode(p, j, 0, u));
            if (f != windex[p].end()) row = f->second;
          } else if (neg == full && s == full) {
            auto f = windex[p + n].find(ck_encode(p, j, 0, u));
            if (f != windex[p + n].end()) row = f->second;
          }
          if (row >= 0 && !ops.is_zero(val)) trip.emplace_back(row, col, val);
        }
        y = apply_h(z);
      }
    }
    rankd[m] = ops.rank((int)itn->second.size(), (int)basis.size(), std::move(trip), ctx);
  }

  std::map<int, long long> h;
  for (auto& [m, basis] : wbasis) {
    long long below = rankd.count(m - 1) ? rankd[m - 1] : 0;
    long long val = (long long)basis.size() - rankd[m] - below;
    if (val < 0) throw std::logic_error("transfer engine produced negative dimension");
    if (val) h[m] = val;
  }
  return h;
}

// ---------------------------------------------------------------------------
// brute engine: one matrix per total degree of the truncated double complex
// ---------------------------------------------------------------------------

template <class Ops>
std::map<int, long long> run_brute(const FieldComplex<Ops>& fc, int t, int M, const Ops& ops,
                                   const Context& ctx) {
  using E = typename Ops::E;
  const int n = fc.n;
  const unsigned full = (1u << (n + 1)) - 1;

  std::map<int, std::vector<u64>> basis;          // total degree -> keys
  std::map<int, std::unordered_map<u64, int>> index;
  for (auto& [p, tw] : fc.terms)
    for (int j = 0; j < (int)tw.size(); ++j) {
      int D = tw[j] + t;
      for (unsigned s = 1; s <= full; ++s) {
        int q = std::popcount(s) - 1;
        int lb[4] = {0, 0, 0, 0};
        for (int i = 0; i <= n; ++i)
          if ((s >> i) & 1) lb[i] = -M;
        Mono cur = mono_zero();
        std::vector<Mono> monos;
        enumerate_monomials(n + 1, D, lb, cur, 0, monos);
        int m = p + q;
        for (auto& u : monos) {
          u64 k = ck_encode(p, j, s, u);
          index[m][k] = (int)basis[m].size();
          basis[m].push_back(k);
        }
      }
    }
  if (basis.empty()) return {};

  long long cells = 0;
  for (auto& [m, b] : basis) cells += (long long)b.size();
  if (cells > ctx.max_cells) throw ResourceError("brute Cech basis exceeds guard", cells);

  std::map<int, long long> rankd;
  for (auto& [m, b] : basis) {
    auto itn = index.find(m + 1);
    if (itn == index.end()) {
      rankd[m] = 0;
      continue;
    }
    std::vector<std::tuple<int, int, E>> trip;
    for (int col = 0; col < (int)b.size(); ++col) {
      int p, j;
      unsigned s;
      Mono u;
      ck_decode(b[col], p, j, s, u);
      // Cech part, sign (-1)^p * (-1)^{#below}
      for (int i = 0; i <= n; ++i) {
        if ((s >> i) & 1) continue;
        unsigned s2 = s | (1u << i);
        auto f = itn->second.find(ck_encode(p, j, s2, u));
        if (f == itn->second.end()) continue;
        int below = std::popcount(s & ((1u << i) - 1));
        bool neg = ((below + (p & 1)) & 1) != 0;
        trip.emplace_back(f->second, col, neg ? ops.neg(ops.from_ll(1)) : ops.from_ll(1));
      }
      // polynomial part
      auto itd = fc.bycol.find(p);
      if (itd != fc.bycol.end())
        for (auto& [row, mono, coef] : itd->second[j]) {
          auto f = itn->second.find(ck_encode(p + 1, row, s, mono_add(u, mono)));
          if (f != itn->second.end()) trip.emplace_back(f->second, col, coef);
        }
    }
    rankd[m] = ops.rank((int)itn->second.size(), (int)b.size(), std::move(trip), ctx);
  }

  std::map<int, long long> h;
  for (auto& [m, b] : basis) {
    long long below = rankd.count(m - 1) ? rankd[m - 1] : 0;
    long long val = (long long)b.size() - rankd[m] - below;
    if (val < 0) throw std::logic_error("brute engine produced negative dimension");
    if (val) h[m] = val;
  }
  return h;
}

template <class F>
auto with_field(const Context& ctx, F&& fn) {
  if (ctx.kind == FieldKind::Prime) {
    CFp ops{ctx.fp};
    return fn(ops);
  }
  CRat ops;
  return fn(ops);
}

}  // namespace

int cech_truncation_order(const FreeComplex& c, int t) {
  int worst = 0;
  for (auto& [p, tw] : c.terms)
    for (int d : tw) worst = std::max(worst, -(d + t) - c.n);
  return worst + 1;
}

std::map<int, long long> hypercohomology_transfer(const FreeComplex& c, int t,
                                                  const Context& ctx) {
  return with_field(ctx, [&](auto& ops) {
    auto fc = build_field_complex(c, ops);
    return run_transfer(fc, t, ops, ctx);
  });
}

std::map<int, long long> hypercohomology_brute(const FreeComplex& c, int t, const Context& ctx,
                                               int m_override) {
  int M = m_override >= 0 ? m_override : cech_truncation_order(c, t);
  return with_field(ctx, [&](auto& ops) {
    auto fc = build_field_complex(c, ops);
    return run_brute(fc, t, M, ops, ctx);
  });
}

std::map<int, long long> hypercohomology(const FreeComplex& c, int t, const Context& ctx) {
  if (ctx.engine == Context::CechEngine::Brute) return hypercohomology_brute(c, t, ctx);
  return hypercohomology_transfer(c, t, ctx);
}

CohomologyTable cohomology_table(const FreeComplex& c, int tmin, int tmax, const Context& ctx) {
  CohomologyTable out;
  out.n = c.n;
  out.tmin = tmin;
  out.tmax = tmax;
  with_field(ctx, [&](auto& ops) {
    auto fc = build_field_complex(c, ops);
    for (int t = tmin; t <= tmax; ++t) {
      auto h = ctx.engine == Context::CechEngine::Brute
                   ? run_brute(fc, t, cech_truncation_order(c, t), ops, ctx)
                   : run_transfer(fc, t, ops, ctx);
      for (auto& [m, v] : h)
        if (m >= 0 && m <= c.n && v) out.h[{m, t}] = v;
    }
    return 0;
  });
  return out;
}

std::vector<long long> ext_groups(const FreeComplex& c, const FreeComplex& d, const Context& ctx) {
  FreeComplex t = tensor(dual(c), d);
  auto h = hypercohomology(t, 0, ctx);
  std::vector<long long> out(c.n + 1, 0);
  for (auto& [m, v] : h)
    if (m >= 0 && m <= c.n) out[m] = v;
  return out;
}

long long h_line_bundle(int n, int i, int d) {
  auto binom = [](long long a, int b) {
    if (a < b || b < 0) return 0ll;
    long long r = 1;
    for (int k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return r;
  };
  if (i == 0) return d >= 0 ? binom(d + n, n) : 0;
  if (i == n) return d <= -(n + 1) ? binom(-d - 1, n) : 0;
  return 0;
}

std::string table_to_json(const CohomologyTable& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["window"] = {t.tmin, t.tmax};
  nlohmann::json h = nlohmann::json::object();
  for (auto& [it, v] : t.h) h[std::to_string(it.first) + "," + std::to_string(it.second)] = v;
  j["h"] = h;
  return j.dump(2);
}

}  // namespace acm
