#include "acm/linalg.hpp"

#include <algorithm>
#include <queue>

namespace acm {

int rank_dense_fp(std::vector<u64>& a, int rows, int cols, const PrimeField& f,
                  const Context& ctx) {
  if (std::min(rows, cols) > ctx.max_dense)
    throw ResourceError("dense rank exceeds guard", std::min(rows, cols));
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (a[(size_t)i * cols + c]) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      std::swap_ranges(a.begin() + (size_t)pr * cols, a.begin() + (size_t)(pr + 1) * cols,
                       a.begin() + (size_t)r * cols);
    u64* prow = &a[(size_t)r * cols];
    u64 inv = f.inv(prow[c]);
    for (int j = c; j < cols; ++j) prow[j] = f.mul(prow[j], inv);
    for (int i = r + 1; i < rows; ++i) {
      u64* irow = &a[(size_t)i * cols];
      u64 v = irow[c];
      if (!v) continue;
      u64 fn = f.p - v;
      for (int j = c; j < cols; ++j) irow[j] = f.reduce(irow[j] + fn * prow[j]);
    }
    ++r;
  }
  return r;
}

std::pair<int, std::vector<std::vector<u64>>> kernel_dense_fp(std::vector<u64> a, int rows,
                                                              int cols, const PrimeField& f,
                                                              const Context& ctx) {
  if (std::min(rows, cols) > ctx.max_dense)
    throw ResourceError("dense kernel exceeds guard", std::min(rows, cols));
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (a[(size_t)i * cols + c]) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      std::swap_ranges(a.begin() + (size_t)pr * cols, a.begin() + (size_t)(pr + 1) * cols,
                       a.begin() + (size_t)r * cols);
    u64* prow = &a[(size_t)r * cols];
    u64 inv = f.inv(prow[c]);
    for (int j = c; j < cols; ++j) prow[j] = f.mul(prow[j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      u64* irow = &a[(size_t)i * cols];
      u64 v = irow[c];
      if (!v) continue;
      u64 fn = f.p - v;
      for (int j = c; j < cols; ++j) irow[j] = f.reduce(irow[j] + fn * prow[j]);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<u64>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<u64> v(cols, 0);
    v[c] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = f.neg(a[(size_t)i * cols + c]);
    basis.push_back(std::move(v));
  }
  return {r, std::move(basis)};
}

namespace {

struct FpOps {
  PrimeField f;
  using E = u64;
  bool is_zero(const E& x) const { return x == 0; }
  E add(const E& a, const E& b) const { return f.add(a, b); }
  E mul(const E& a, const E& b) const { return f.mul(a, b); }
  E neg(const E& a) const { return f.neg(a); }
  E inv(const E& a) const { return f.inv(a); }
  E from_ll(long long v) const { return f.from_int(v); }
  static constexpr bool kHasDense = true;
};

struct RatOps {
  using E = cpp_rational;
  bool is_zero(const E& x) const { return x == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const { return 1 / a; }
  E from_ll(long long v) const { return E(v); }
  static constexpr bool kHasDense = false;
};

/// Markowitz-style sparse elimination over an abstract field, with an
/// optional switch to dense elimination once the live block is small and
/// filled in.
template <class Ops>
class SparseElim {
 public:
  template <class V, class Conv>
  SparseElim(int rows, int cols, std::vector<std::tuple<int, int, V>>& t, const Ops& ops,
             const Context& ctx, Conv conv)
      : ops_(ops), ctx_(ctx), nrows_(rows), ncols_(cols) {
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) {
      return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    row_.resize(nrows_);
    colrows_.resize(ncols_);
    colcount_.assign(ncols_, 0);
    for (size_t i = 0; i < t.size();) {
      size_t j = i;
      auto acc = conv(std::get<2>(t[i]));
      ++j;
      while (j < t.size() && std::get<0>(t[j]) == std::get<0>(t[i]) &&
             std::get<1>(t[j]) == std::get<1>(t[i]))
        acc = ops_.add(acc, conv(std::get<2>(t[j++])));
      if (!ops_.is_zero(acc)) row_[std::get<0>(t[i])].emplace_back(std::get<1>(t[i]), acc);
      i = j;
    }
    rowlive_.assign(nrows_, 1);
    collive_.assign(ncols_, 1);
    nnz_ = 0;
    for (int r = 0; r < nrows_; ++r)
      for (auto& [c, v] : row_[r]) {
        colrows_[c].push_back(r);
        ++colcount_[c];
        ++nnz_;
      }
    for (int c = 0; c < ncols_; ++c)
      if (colcount_[c]) heap_.push({colcount_[c], c});
  }

  int run() {
    int rank = 0;
    while (true) {
      if (nnz_ > ctx_.max_cells) throw ResourceError("sparse elimination exceeds guard", nnz_);
      if constexpr (Ops::kHasDense) {
        // the scan in should_densify is linear, so only probe occasionally
        if ((rank & 127) == 0 && should_densify()) return rank + dense_finish();
      }
      int pc = pop_col();
      if (pc < 0) break;
      int pr = pick_row(pc);
      eliminate(pr, pc);
      ++rank;
    }
    return rank;
  }

 private:
  const Ops& ops_;
  const Context& ctx_;
  int nrows_, ncols_;
  std::vector<std::vector<std::pair<int, typename Ops::E>>> row_;
  std::vector<std::vector<int>> colrows_;  // may hold stale entries
  std::vector<int> colcount_;
  std::vector<char> rowlive_, collive_;
  long long nnz_ = 0;
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>
      heap_;

  bool row_has(int r, int c) const {
    auto& rw = row_[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& p, int cc) { return p.first < cc; });
    return it != rw.end() && it->first == c;
  }

  bool should_densify() {
    if (nnz_ == 0) return false;
    long long lr = 0, lc = 0;
    for (int r = 0; r < nrows_; ++r)
      if (rowlive_[r] && !row_[r].empty()) ++lr;
    for (int c = 0; c < ncols_; ++c)
      if (collive_[c] && colcount_[c]) ++lc;
    if (lr == 0 || lc == 0) return false;
    if (lr > ctx_.max_dense || lc > ctx_.max_dense) return false;
    return nnz_ > lr * lc / 16 && lr * lc <= (long long)ctx_.max_dense * ctx_.max_dense;
  }

  int dense_finish() {
    std::vector<int> rid, cid(ncols_, -1);
    std::vector<int> cs;
    for (int c = 0; c < ncols_; ++c)
      if (collive_[c] && colcount_[c]) {
        cid[c] = (int)cs.size();
        cs.push_back(c);
      }
    for (int r = 0; r < nrows_; ++r)
      if (rowlive_[r] && !row_[r].empty()) rid.push_back(r);
    int R = (int)rid.size(), C = (int)cs.size();
    std::vector<u64> a((size_t)R * C, 0);
    for (int i = 0; i < R; ++i)
      for (auto& [c, v] : row_[rid[i]])
        if (cid[c] >= 0) a[(size_t)i * C + cid[c]] = v;
    return rank_dense_fp(a, R, C, ops_.f, ctx_);
  }

  int pop_col() {
    while (!heap_.empty()) {
      auto [cnt, c] = heap_.top();
      heap_.pop();
      if (collive_[c] && colcount_[c] == cnt && cnt > 0) return c;
    }
    return -1;
  }

  // cheapest live row in column pc; over Q prefer +-1 pivots among ties
  int pick_row(int pc) {
    int best = -1;
    size_t best_len = SIZE_MAX;
    auto& cr = colrows_[pc];
    std::vector<int> fresh;
    for (int r : cr) {
      if (!rowlive_[r] || !row_has(r, pc)) continue;
      if (!fresh.empty() && fresh.back() == r) continue;
      fresh.push_back(r);
      if (row_[r].size() < best_len) {
        best_len = row_[r].size();
        best = r;
      }
    }
    cr = fresh;
    colcount_[pc] = (int)fresh.size();
    return best;
  }

  void eliminate(int pr, int pc) {
    auto& prow = row_[pr];
    auto pit = std::lower_bound(prow.begin(), prow.end(), pc,
                                [](const auto& p, int cc) { return p.first < cc; });
    auto piv_inv = ops_.inv(pit->second);
    std::vector<int> targets = colrows_[pc];
    for (int r : targets) {
      if (r == pr || !rowlive_[r]) continue;
      auto& rw = row_[r];
      auto it = std::lower_bound(rw.begin(), rw.end(), pc,
                                 [](const auto& p, int cc) { return p.first < cc; });
      if (it == rw.end() || it->first != pc) continue;
      auto factor = ops_.neg(ops_.mul(it->second, piv_inv));
      std::vector<std::pair<int, typename Ops::E>> merged;
      merged.reserve(rw.size() + prow.size());
      size_t i = 0, j = 0;
      while (i < rw.size() || j < prow.size()) {
        if (j == prow.size() || (i < rw.size() && rw[i].first < prow[j].first)) {
          merged.push_back(rw[i++]);
        } else if (i == rw.size() || prow[j].first < rw[i].first) {
          auto v = ops_.mul(factor, prow[j].second);
          if (!ops_.is_zero(v)) {
            merged.emplace_back(prow[j].first, v);
            colrows_[prow[j].first].push_back(r);
            ++colcount_[prow[j].first];
            heap_.push({colcount_[prow[j].first], prow[j].first});
            ++nnz_;
          }
          ++j;
        } else {
          auto v = ops_.add(rw[i].second, ops_.mul(factor, prow[j].second));
          if (!ops_.is_zero(v)) {
            merged.emplace_back(rw[i].first, v);
          } else {
            --colcount_[rw[i].first];
            heap_.push({colcount_[rw[i].first], rw[i].first});
            --nnz_;
          }
          ++i, ++j;
        }
      }
      rw = std::move(merged);
    }
    // retire the pivot row and column
    for (auto& [c, v] : prow) {
      --colcount_[c];
      if (c != pc) heap_.push({colcount_[c], c});
      --nnz_;
    }
    prow.clear();
    prow.shrink_to_fit();
    rowlive_[pr] = 0;
    collive_[pc] = 0;
  }
};

}  // namespace

int rank(const SparseMatrix& m, const Context& ctx) {
  if (m.rows == 0 || m.cols == 0) return 0;
  auto t = m.entries;
  if (ctx.kind == FieldKind::Prime) {
    FpOps ops{ctx.fp};
    auto conv = [&](long long v) { return ops.from_ll(v); };
    return SparseElim<FpOps>(m.rows, m.cols, t, ops, ctx, conv).run();
  }
  RatOps ops;
  auto conv = [&](long long v) { return ops.from_ll(v); };
  return SparseElim<RatOps>(m.rows, m.cols, t, ops, ctx, conv).run();
}

int rank_triplets_fp(int rows, int cols, std::vector<std::tuple<int, int, u64>> t,
                     const Context& ctx) {
  if (rows == 0 || cols == 0) return 0;
  FpOps ops{ctx.fp};
  auto conv = [&](u64 v) { return ops.f.reduce(v); };
  return SparseElim<FpOps>(rows, cols, t, ops, ctx, conv).run();
}

int rank_triplets_rational(int rows, int cols, std::vector<std::tuple<int, int, cpp_rational>> t,
                           const Context& ctx) {
  if (rows == 0 || cols == 0) return 0;
  RatOps ops;
  auto conv = [](const cpp_rational& v) { return v; };
  return SparseElim<RatOps>(rows, cols, t, ops, ctx, conv).run();
}

}  // namespace acm
