#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "acm/fib.hpp"

using namespace acm;

TEST_CASE("arrow counts") {
  CHECK(arrows_for(2) == 3);
  CHECK(arrows_for(3) == 6);
  CHECK_THROWS(arrows_for(1));
  CHECK_THROWS(arrows_for(4));
}

TEST_CASE("frozen values") {
  long long want3[] = {0, 1, 3, 8, 21, 55, 144};
  long long want6[] = {0, 1, 6, 35, 204, 1189, 6930, 40391};
  for (int k = 0; k <= 6; ++k) CHECK(fibonacci(3, k) == want3[k]);
  for (int k = 0; k <= 7; ++k) CHECK(fibonacci(6, k) == want6[k]);
}

TEST_CASE("negative indices by the same recursion") {
  // a_{l,k-1} = l a_{l,k} - a_{l,k+1} extends downward
  for (int l : {3, 6})
    for (int k = -6; k <= 6; ++k)
      CHECK(fibonacci(l, k + 1) == l * fibonacci(l, k) - fibonacci(l, k - 1));
}

TEST_CASE("rank formulas") {
  // F_1 is the twisted cotangent bundle: rank n
  CHECK(rank_fk(2, 1) == 2);
  CHECK(rank_fk(3, 1) == 3);
  // F_0 = O(-1), F_{-1} = O(1) convention: rank 1 at k <= 0
  CHECK(rank_fk(2, 0) == 1);
  CHECK(rank_fk(2, -1) == 1);
  CHECK(rank_fk(3, 0) == 1);
  // ranks satisfy the same recursion: rk F_{k+1} = l rk F_k - rk F_{k-1}
  for (int n : {2, 3}) {
    int l = arrows_for(n);
    for (int k = 0; k <= 4; ++k)
      CHECK(rank_fk(n, k + 1) == l * rank_fk(n, k) - rank_fk(n, k - 1));
  }
  // E_1 = O(-1)
  CHECK(rank_ek(2, 1) == 1);
  CHECK(rank_ek(3, 1) == 1);
  CHECK(rank_ek(2, 2) > 0);
  CHECK(rank_ek(3, 3) > 0);
}

TEST_CASE("growth is exact big-int") {
  cpp_int v = fibonacci(6, 40);
  CHECK(v > cpp_int(1) << 90);  // no overflow: value exceeds any 64-bit integer
  CHECK(fibonacci(6, 41) == 6 * v - fibonacci(6, 39));
}
