#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "acm/fib.hpp"
#include "acm/kron.hpp"

using namespace acm;

namespace {
long long fib_ll(int l, int k) { return fibonacci(l, k).convert_to<long long>(); }
}

TEST_CASE("euler form") {
  CHECK(euler_form(3, {1, 0}, {1, 0}) == 1);
  CHECK(euler_form(3, {0, 1}, {0, 1}) == 1);
  CHECK(euler_form(3, {1, 0}, {0, 1}) == -3);
  CHECK(euler_form(3, {0, 1}, {1, 0}) == 0);
  // <dim R_k, dim R_k> = 1 at the real roots
  for (int l : {3, 6})
    for (int k = -4; k <= 4; ++k) {
      DimVector v = rk_dims(l, k);
      CHECK(euler_form(l, v, v) == 1);
    }
}

TEST_CASE("rigid dimension vectors") {
  CHECK(rk_dims(3, 1) == DimVector{0, 1});
  CHECK(rk_dims(3, 2) == DimVector{1, 3});
  CHECK(rk_dims(3, 3) == DimVector{3, 8});
  CHECK(rk_dims(3, 0) == DimVector{1, 0});
  CHECK(rk_dims(3, -1) == DimVector{3, 1});
  CHECK(rk_dims(6, 2) == DimVector{1, 6});
  CHECK(rk_dims(6, -2) == DimVector{35, 6});
}

TEST_CASE("hom/ext identities for small rigid pairs, l = 3") {
  Context ctx = Context::make(FieldKind::Prime, 1);
  std::map<int, KroneckerRep> r;
  for (int k = -2; k <= 3; ++k) r.emplace(k, rk_rep(3, k, ctx));
  for (int k = -2; k <= 3; ++k)
    for (int j = k + 1; j <= 3; ++j) {
      bool mixed = k <= 0 && j >= 1;
      HomExt down = hom_ext(r.at(j), r.at(k), ctx);
      HomExt up = hom_ext(r.at(k), r.at(j), ctx);
      long long m_down = fib_ll(3, j - k - 1), m_up = fib_ll(3, j - k + 1);
      CAPTURE(k);
      CAPTURE(j);
      CHECK(down.hom == (mixed ? m_down : 0));
      CHECK(down.ext1 == (mixed ? 0 : m_down));
      CHECK(up.hom == (mixed ? 0 : m_up));
      CHECK(up.ext1 == (mixed ? m_up : 0));
    }
}

TEST_CASE("self ext of rigid representations vanishes") {
  Context ctx = Context::make(FieldKind::Prime, 2);
  for (int l : {3, 6})
    for (int k = -2; k <= 2; ++k) {
      KroneckerRep r = rk_rep(l, k, ctx);
      HomExt he = hom_ext(r, r, ctx);
      CHECK(he.hom == 1);
      CHECK(he.ext1 == 0);
    }
}

TEST_CASE("hom_ext respects the Euler form") {
  Context ctx = Context::make(FieldKind::Prime, 3);
  for (u64 s = 0; s < 8; ++s) {
    DimVector v{(long long)(s % 4) + 1, (long long)(s % 3) + 1};
    DimVector w{(long long)(s % 3) + 1, (long long)(s % 5) + 1};
    KroneckerRep a = generic_rep(3, v, 50 + s, ctx);
    KroneckerRep b = generic_rep(3, w, 90 + s, ctx);
    HomExt he = hom_ext(a, b, ctx);
    CHECK(he.hom - he.ext1 == euler_form(3, v, w));
  }
}

TEST_CASE("kac decomposition") {
  // dim R_2 + dim R_3 decomposes; isolated checks of mixed exclusion
  auto d = kac_decompose(3, {4, 11});  // (1,3) + (3,8)
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<std::pair<int, long long>>{{2, 1}, {3, 1}});

  auto single = kac_decompose(3, {6, 16});  // 2 * (3,8)
  REQUIRE(single.has_value());
  CHECK(*single == std::vector<std::pair<int, long long>>{{3, 2}});

  CHECK_FALSE(kac_decompose(3, {1, 1}).has_value());  // R_0 + R_1 is not rigid
  CHECK_FALSE(kac_decompose(3, {2, 2}).has_value());
  auto adj = kac_decompose(3, {1, 4});  // R_1 + R_2
  REQUIRE(adj.has_value());
  CHECK(*adj == std::vector<std::pair<int, long long>>{{1, 1}, {2, 1}});
  CHECK(kac_decompose(3, {0, 0}).has_value());
  CHECK(kac_decompose(3, {0, 5}).has_value());   // R_1^5
  CHECK(kac_decompose(3, {5, 0}).has_value());   // R_0^5
  CHECK_FALSE(kac_decompose(3, {1, 2}).has_value());  // regular root region
}

TEST_CASE("generic representations are deterministic in the seed") {
  Context ctx = Context::make(FieldKind::Prime, 4);
  KroneckerRep a = generic_rep(3, {2, 3}, 77, ctx);
  KroneckerRep b = generic_rep(3, {2, 3}, 77, ctx);
  KroneckerRep c = generic_rep(3, {2, 3}, 78, ctx);
  CHECK(a.mats == b.mats);
  CHECK(a.mats != c.mats);
}

TEST_CASE("transpose duality swaps hom patterns") {
  Context ctx = Context::make(FieldKind::Prime, 5);
  KroneckerRep r2 = rk_rep(3, 2, ctx), r3 = rk_rep(3, 3, ctx);
  HomExt fwd = hom_ext(r2, r3, ctx);
  HomExt dualized = hom_ext(transpose_rep(r3), transpose_rep(r2), ctx);
  CHECK(fwd.hom == dualized.hom);
  CHECK(fwd.ext1 == dualized.ext1);
}

TEST_CASE("json round trip") {
  Context ctx = Context::make(FieldKind::Prime, 6);
  KroneckerRep r = generic_rep(6, {3, 2}, 5, ctx);
  KroneckerRep back = rep_from_json(rep_to_json(r));
  CHECK(back.l == r.l);
  CHECK(back.dims == r.dims);
  CHECK(back.mats == r.mats);
}
