#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <tuple>
#include <vector>

#include "acm/field.hpp"

namespace acm {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Integer sparse matrix in triplet form; duplicate positions accumulate.
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::tuple<int, int, long long>> entries;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c) {}
  void add(int r, int c, long long v) {
    if (v != 0) entries.emplace_back(r, c, v);
  }
};

/// Rank over the context's field (exact over Q, or modulo the run prime,
/// which gives the generic rank with overwhelming probability).
int rank(const SparseMatrix& m, const Context& ctx);

inline int kernel_dim(const SparseMatrix& m, const Context& ctx) {
  return m.cols - rank(m, ctx);
}
inline int cokernel_dim(const SparseMatrix& m, const Context& ctx) {
  return m.rows - rank(m, ctx);
}

/// Rank of field-valued triplet matrices (duplicates accumulate).
int rank_triplets_fp(int rows, int cols, std::vector<std::tuple<int, int, u64>> t,
                     const Context& ctx);
int rank_triplets_rational(int rows, int cols, std::vector<std::tuple<int, int, cpp_rational>> t,
                           const Context& ctx);

/// Dense row-major rank over F_p; destroys `a`.
int rank_dense_fp(std::vector<u64>& a, int rows, int cols, const PrimeField& f,
                  const Context& ctx);

/// Rank plus a basis of the right kernel (columns of the returned basis).
std::pair<int, std::vector<std::vector<u64>>> kernel_dense_fp(std::vector<u64> a, int rows,
                                                              int cols, const PrimeField& f,
                                                              const Context& ctx);

}  // namespace acm
