#include "acm/kron.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "acm/fib.hpp"
#include "json.hpp"

namespace acm {

namespace {

u64 mix_seed(u64 a, u64 b) {
  u64 x = a * 0x9e3779b97f4a7c15ull + b + 0x2545f4914f6cdd1dull;
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 29;
  return x;
}

long long checked_ll(const cpp_int& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() / 4 || v < 0)
    throw std::invalid_argument(std::string(what) + ": dimension out of range");
  return (long long)v;
}

}  // namespace

long long euler_form(int l, DimVector v, DimVector w) {
  return v.a * w.a + v.b * w.b - (long long)l * v.a * w.b;
}

KroneckerRep transpose_rep(const KroneckerRep& r) {
  KroneckerRep t;
  t.l = r.l;
  t.dims = {r.dims.b, r.dims.a};
  t.mats.resize(r.l);
  int a = (int)r.dims.a, b = (int)r.dims.b;
  for (int al = 0; al < r.l; ++al) {
    t.mats[al].assign((size_t)a * b, 0);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < a; ++j) t.mats[al][(size_t)j * b + i] = r.mats[al][(size_t)i * a + j];
  }
  return t;
}

KroneckerRep generic_rep(int l, DimVector v, u64 seed, const Context& ctx) {
  if (v.a < 0 || v.b < 0 || l < 1) throw std::invalid_argument("generic_rep: bad arguments");
  KroneckerRep r;
  r.l = l;
  r.dims = v;
  std::mt19937_64 rng(mix_seed(mix_seed(seed, (u64)l), mix_seed((u64)v.a, (u64)v.b)));
  u64 bound = ctx.kind == FieldKind::Prime ? ctx.fp.p - 1 : (1u << 20) - 1;
  std::uniform_int_distribution<u64> dist(0, bound);
  r.mats.resize(l);
  for (int al = 0; al < l; ++al) {
    r.mats[al].resize((size_t)v.a * v.b);
    for (auto& x : r.mats[al]) x = dist(rng);
  }
  return r;
}

DimVector rk_dims(int l, int k) {
  if (k >= 1)
    return {checked_ll(fibonacci(l, k - 1), "rk_dims"), checked_ll(fibonacci(l, k), "rk_dims")};
  return {checked_ll(fibonacci(l, 1 - k), "rk_dims"), checked_ll(fibonacci(l, -k), "rk_dims")};
}

// ---------------------------------------------------------------------------
// hom_ext: rank of the Hom-complex differential
//   (phi0, phi1) -> (B_al * phi0 - phi1 * A_al)_al
// between R = (a, b, A) and S = (c, d, B).
// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = 1e300;
constexpr long long kDenseCellGuard = 60'000'000;  // entries of one dense scratch matrix

struct PairDims {
  long long a, b, c, d, l;
  long long c0() const { return c * a + d * b; }
  long long c1() const { return l * d * a; }
};

double direct_cost(const PairDims& p, const Context& ctx) {
  long long rows = p.c1(), cols = p.c0();
  long long m = std::min(rows, cols);
  if (m == 0) return 0.0;
  if (m > ctx.max_dense) return kInf;
  if (rows * cols > kDenseCellGuard) return kInf;
  return (double)rows * (double)cols * (double)m / 50.0;  // sparse engine discount
}

// V-reduction: the phi1 block of the differential is I_d (x) T with
// T = stack_al(A_al^T) of shape (l*a) x b.  Its rank is d*rank(T); the Schur
// complement on the phi0 block is F[(w1,q),(w0,v0)] = sum_al B[w1,w0]*K[q,(al,v0)]
// where the rows of K span the left kernel of T.
double vred_cost(const PairDims& p, const Context& ctx) {
  long long la = p.l * p.a;
  if (std::min(la, p.b) > ctx.max_dense) return kInf;
  if (la * p.b > kDenseCellGuard) return kInf;
  long long corank = la - std::min(la, p.b);  // generic estimate
  long long rf = p.d * corank, cf = p.c * p.a;
  long long m = std::min(rf, cf), M = std::max(rf, cf);
  if (m > ctx.max_dense) return kInf;
  double cost = (double)la * p.b * std::min(la, p.b);
  if (m > 0) {
    long long effM = rf * cf <= kDenseCellGuard ? M : m + 64;
    cost += (double)m * m * effM / 3.0 + (double)m * effM * p.l;
  }
  return cost;
}

long long rank_direct(const KroneckerRep& R, const KroneckerRep& S, const Context& ctx) {
  int a = (int)R.dims.a, b = (int)R.dims.b, c = (int)S.dims.a, d = (int)S.dims.b;
  int l = R.l;
  SparseMatrix m((int)((long long)l * d * a), (int)((long long)c * a + (long long)d * b));
  for (int al = 0; al < l; ++al)
    for (int w1 = 0; w1 < d; ++w1)
      for (int v0 = 0; v0 < a; ++v0) {
        int row = (al * d + w1) * a + v0;
        for (int w0 = 0; w0 < c; ++w0) {
          long long val = (long long)S.mats[al][(size_t)w1 * c + w0];
          m.add(row, w0 * a + v0, val);
        }
        for (int v1 = 0; v1 < b; ++v1) {
          long long val = (long long)R.mats[al][(size_t)v1 * a + v0];
          m.add(row, c * a + w1 * b + v1, -val);
        }
      }
  return rank(m, ctx);
}

// rank of F given implicitly by (B matrices, kernel blocks); compression
// certifies full rank, otherwise falls back to the dense matrix when it fits.
long long rank_schur(const KroneckerRep& S, const std::vector<std::vector<u64>>& K, int a,
                     const Context& ctx, u64 seed) {
  const PrimeField& f = ctx.fp;
  int l = S.l, c = (int)S.dims.a, d = (int)S.dims.b;
  long long corank = (long long)K.size();
  long long rf = d * corank, cf = (long long)c * a;
  if (rf == 0 || cf == 0) return 0;
  long long m = std::min(rf, cf);
  if (m > ctx.max_dense) throw ResourceError("hom_ext Schur block exceeds guard", m);

  auto dense_exact = [&]() -> long long {
    if (rf * cf > kDenseCellGuard)
      throw ResourceError("hom_ext Schur block exceeds guard", rf * cf);
    std::vector<u64> F((size_t)rf * cf, 0);
    for (int al = 0; al < l; ++al)
      for (int w1 = 0; w1 < d; ++w1)
        for (long long q = 0; q < corank; ++q) {
          u64* frow = &F[(size_t)(w1 * corank + q) * cf];
          const u64* kb = &K[q][(size_t)al * a];
          const u64* brow = &S.mats[al][(size_t)w1 * c];
          for (int w0 = 0; w0 < c; ++w0) {
            u64 bv = brow[w0];
            if (!bv) continue;
            u64* dst = frow + (size_t)w0 * a;
            for (int v0 = 0; v0 < a; ++v0) dst[v0] = f.reduce(dst[v0] + f.mul(bv, kb[v0]));
          }
        }
    return rank_dense_fp(F, (int)rf, (int)cf, f, ctx);
  };

  if (rf * cf <= kDenseCellGuard && m <= ctx.max_dense && std::max(rf, cf) <= 4 * m)
    return dense_exact();

  // long side compressed by a sparse random matrix; equality of the
  // compressed rank with min(rf, cf) is a certificate of full rank
  const int pad = 32, nnz = 4;
  bool wide = cf > rf;
  long long keep = wide ? rf : cf;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, 0xc0ffee + attempt));
    std::uniform_int_distribution<u64> val(1, f.p - 1);
    long long ycols = wide ? keep + pad : keep;
    long long yrows = wide ? keep : keep + pad;
    std::vector<u64> Y((size_t)yrows * ycols, 0);
    long long samples = wide ? ycols : yrows;
    for (long long g = 0; g < samples; ++g) {
      for (int e = 0; e < nnz; ++e) {
        u64 gamma = val(rng);
        if (wide) {
          // sample source column (w0, v0); accumulate F column into Y col g
          int w0 = (int)(rng() % c), v0 = (int)(rng() % a);
          for (int al = 0; al < l; ++al)
            for (int w1 = 0; w1 < d; ++w1) {
              u64 coef = f.mul(gamma, S.mats[al][(size_t)w1 * c + w0]);
              if (!coef) continue;
              const u64* kb = &K[0][0];
              for (long long q = 0; q < corank; ++q) {
                kb = &K[q][(size_t)al * a];
                size_t idx = (size_t)(w1 * corank + q) * ycols + g;
                Y[idx] = f.reduce(Y[idx] + f.mul(coef, kb[v0]));
              }
            }
        } else {
          // sample source row (w1, q); accumulate F row into Y row g
          int w1 = (int)(rng() % d);
          long long q = (long long)(rng() % (u64)corank);
          u64* yrow = &Y[(size_t)g * ycols];
          for (int al = 0; al < l; ++al) {
            const u64* kb = &K[q][(size_t)al * a];
            const u64* brow = &S.mats[al][(size_t)w1 * c];
            for (int w0 = 0; w0 < c; ++w0) {
              u64 coef = f.mul(gamma, brow[w0]);
              if (!coef) continue;
              u64* dst = yrow + (size_t)w0 * a;
              for (int v0 = 0; v0 < a; ++v0) dst[v0] = f.reduce(dst[v0] + f.mul(coef, kb[v0]));
            }
          }
        }
      }
    }
    long long r = rank_dense_fp(Y, (int)yrows, (int)ycols, f, ctx);
    if (r == keep) return keep;  // certified full rank
  }
  return dense_exact();
}

long long rank_vred(const KroneckerRep& R, const KroneckerRep& S, const Context& ctx) {
  const PrimeField& f = ctx.fp;
  int a = (int)R.dims.a, b = (int)R.dims.b, d = (int)S.dims.b;
  int l = R.l;
  long long la = (long long)l * a;
  if (std::min(la, (long long)b) > ctx.max_dense)
    throw ResourceError("hom_ext reduction matrix exceeds guard", std::min(la, (long long)b));
  if (la * b > kDenseCellGuard)
    throw ResourceError("hom_ext reduction matrix exceeds guard", la * b);
  // T^T has shape b x (l*a); its right kernel is the left kernel of T
  std::vector<u64> tt((size_t)b * la, 0);
  for (int v1 = 0; v1 < b; ++v1)
    for (int al = 0; al < l; ++al)
      for (int v0 = 0; v0 < a; ++v0)
        tt[(size_t)v1 * la + (size_t)al * a + v0] = R.mats[al][(size_t)v1 * a + v0];
  auto [rT, K] = kernel_dense_fp(std::move(tt), b, (int)la, f, ctx);
  long long rankM = (long long)d * rT;
  if (!K.empty()) rankM += rank_schur(S, K, a, ctx, mix_seed(ctx.seed, (u64)(la * 131 + b)));
  return rankM;
}

}  // namespace

HomExt hom_ext(const KroneckerRep& R, const KroneckerRep& S, const Context& ctx) {
  if (R.l != S.l) throw std::invalid_argument("hom_ext: arrow counts differ");
  PairDims p{R.dims.a, R.dims.b, S.dims.a, S.dims.b, R.l};
  HomExt out;
  if (p.c1() == 0 || p.c0() == 0) {
    out.hom = p.c0();
    out.ext1 = p.c1();
    out.strategy = "trivial";
    return out;
  }

  struct Option {
    double cost;
    int which;  // 0 direct, 1 vred, 2 vred on transposed duals
  };
  std::vector<Option> opts;
  opts.push_back({direct_cost(p, ctx), 0});
  if (ctx.kind == FieldKind::Prime) {
    opts.push_back({vred_cost(p, ctx), 1});
    PairDims pd{p.d, p.c, p.b, p.a, p.l};
    opts.push_back({vred_cost(pd, ctx), 2});
  }
  std::sort(opts.begin(), opts.end(), [](const Option& x, const Option& y) { return x.cost < y.cost; });

  long long rankM = -1;
  std::string used;
  std::string last_err;
  for (const auto& o : opts) {
    if (o.cost >= kInf) continue;
    try {
      if (o.which == 0) {
        rankM = rank_direct(R, S, ctx);
        used = "direct";
      } else if (o.which == 1) {
        rankM = rank_vred(R, S, ctx);
        used = "v-reduction";
      } else {
        rankM = rank_vred(transpose_rep(S), transpose_rep(R), ctx);
        used = "dual-v-reduction";
      }
      break;
    } catch (const ResourceError& e) {
      last_err = e.what();
    }
  }
  if (rankM < 0)
    throw ResourceError("hom_ext: no strategy fits the resource guards" +
                            (last_err.empty() ? "" : "; last: " + last_err),
                        std::max(p.c0(), p.c1()));
  out.hom = p.c0() - rankM;
  out.ext1 = p.c1() - rankM;
  out.strategy = used;
  return out;
}

KroneckerRep rk_rep(int l, int k, const Context& ctx, bool* certified) {
  DimVector v = rk_dims(l, k);
  for (int attempt = 0; attempt < 4; ++attempt) {
    KroneckerRep r = generic_rep(l, v, mix_seed(ctx.seed, (u64)(k + 1000) * 4 + attempt), ctx);
    try {
      HomExt he = hom_ext(r, r, ctx);
      if (he.ext1 == 0) {
        if (certified) *certified = true;
        return r;
      }
    } catch (const ResourceError&) {
      if (certified) *certified = false;  // too large to certify; still generic
      return r;
    }
  }
  throw CertificationError("rk_rep: generic representation failed rigidity check");
}

std::optional<std::vector<std::pair<int, long long>>> kac_decompose(int l, DimVector v) {
  if (v.a < 0 || v.b < 0) return std::nullopt;
  if (v.a == 0 && v.b == 0) return std::vector<std::pair<int, long long>>{};
  long long top = std::max(v.a, v.b);
  auto try_pair = [&](int k) -> std::optional<std::vector<std::pair<int, long long>>> {
    DimVector u = rk_dims(l, k), w = rk_dims(l, k + 1);
    long long det = u.a * w.b - u.b * w.a;  // +-1 for adjacent roots
    if (det != 1 && det != -1) return std::nullopt;
    long long r = (v.a * w.b - v.b * w.a) / det;
    long long rp = (u.a * v.b - u.b * v.a) / det;
    if (r < 0 || rp < 0) return std::nullopt;
    if (r > 0 && rp > 0 && k == 0) return std::nullopt;  // mixed pair is not rigid
    std::vector<std::pair<int, long long>> out;
    if (r > 0) out.emplace_back(k, r);
    if (rp > 0) out.emplace_back(k + 1, rp);
    return out;
  };
  for (int k = 0;; ++k) {
    DimVector u = rk_dims(l, k);
    if (std::min(u.a, u.b) > top) break;
    if (auto s = try_pair(k)) return s;
  }
  for (int k = -1;; --k) {
    DimVector u = rk_dims(l, k + 1);
    if (std::min(u.a, u.b) > top) break;
    if (auto s = try_pair(k)) return s;
  }
  return std::nullopt;
}

std::string rep_to_json(const KroneckerRep& r) {
  nlohmann::json j;
  j["l"] = r.l;
  j["dims"] = {r.dims.a, r.dims.b};
  nlohmann::json mats = nlohmann::json::array();
  int a = (int)r.dims.a, b = (int)r.dims.b;
  for (int al = 0; al < r.l; ++al) {
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < b; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int jx = 0; jx < a; ++jx) row.push_back(std::to_string(r.mats[al][(size_t)i * a + jx]));
      m.push_back(row);
    }
    mats.push_back(m);
  }
  j["matrices"] = mats;
  return j.dump(2);
}

KroneckerRep rep_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  KroneckerRep r;
  r.l = j.at("l").get<int>();
  r.dims = {j.at("dims").at(0).get<long long>(), j.at("dims").at(1).get<long long>()};
  int a = (int)r.dims.a, b = (int)r.dims.b;
  auto& mats = j.at("matrices");
  if ((int)mats.size() != r.l) throw std::invalid_argument("rep_from_json: wrong matrix count");
  r.mats.resize(r.l);
  for (int al = 0; al < r.l; ++al) {
    r.mats[al].assign((size_t)a * b, 0);
    if ((int)mats[al].size() != b) throw std::invalid_argument("rep_from_json: wrong row count");
    for (int i = 0; i < b; ++i)
      for (int jx = 0; jx < a; ++jx)
        r.mats[al][(size_t)i * a + jx] = std::stoull(mats[al][i][jx].get<std::string>());
  }
  return r;
}

}  // namespace acm
