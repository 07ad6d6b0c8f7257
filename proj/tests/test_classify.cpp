#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "acm/classify.hpp"
#include "acm/fib.hpp"

using namespace acm;

TEST_CASE("regularity of line bundles") {
  Context ctx = Context::make(FieldKind::Prime, 1);
  CHECK(find_regularity(line_bundle(2, 0), ctx) == 0);
  CHECK(find_regularity(line_bundle(2, 3), ctx) == -3);
  CHECK(find_regularity(line_bundle(3, -2), ctx) == 2);
  // Omega(1) has regularity 1: h^1(Omega) != 0
  CHECK(find_regularity(koszul_model(2, 1, 1), ctx) == 1);
}

TEST_CASE("normalization finds the first twist with sections") {
  Context ctx = Context::make(FieldKind::Prime, 2);
  auto [c, s] = normalize(line_bundle(2, -3), ctx);
  CHECK(s == 3);
  auto [c2, s2] = normalize(line_bundle(2, 2), ctx);
  CHECK(s2 == -2);
  auto [c3, s3] = normalize(koszul_model(2, 1, 1), ctx);  // Omega(2) is the first with h^0
  CHECK(s3 == 1);
  (void)c;
  (void)c2;
  (void)c3;
}

TEST_CASE("classification of line bundles") {
  Context ctx = Context::make(FieldKind::Prime, 3);
  for (int n : {2, 3})
    for (int t : {-2, 0, 1}) {
      ClassificationResult r = classify(line_bundle(n, t), ctx);
      CHECK(r.c == BundleCase::LineBundle);
      CHECK(r.a == 1);
      CHECK(r.b == 0);
      CHECK(r.s == -t);
      CHECK(r.rigid == std::vector<std::pair<int, long long>>{{1, 1}});
    }
}

TEST_CASE("classification of E_k") {
  Context ctx = Context::make(FieldKind::Prime, 4);
  for (int n : {2, 3}) {
    int l = arrows_for(n);
    for (int k = 2; k <= 3; ++k) {
      ClassificationResult r = classify(ek_bundle(n, k, ctx), ctx);
      CHECK(r.a == fibonacci(l, k).convert_to<long long>());
      CHECK(r.b == fibonacci(l, k - 1).convert_to<long long>());
      CHECK(r.rigid == std::vector<std::pair<int, long long>>{{k, 1}});
    }
  }
}

TEST_CASE("classification of dual bundles") {
  Context ctx = Context::make(FieldKind::Prime, 8);
  // dual(E_3) lands in the dual Steiner family with the same (a, b)
  for (int n : {2, 3}) {
    int l = arrows_for(n);
    ClassificationResult r = classify(dual(ek_bundle(n, 3, ctx)), ctx);
    CHECK(r.c == BundleCase::SteinerDual);
    CHECK(r.a == fibonacci(l, 3).convert_to<long long>());
    CHECK(r.b == fibonacci(l, 2).convert_to<long long>());
    CHECK(r.rigid == std::vector<std::pair<int, long long>>{{3, 1}});
    auto comps = rigid_decompose(dual(ek_bundle(n, 3, ctx)), ctx);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].dual_family);
  }
  // on P^3, dual(E_2) is also of dual type; on P^2 it happens to be Steiner
  // again (rank 2 with c1 = 1, so the dual is a twist of the bundle itself)
  ClassificationResult d2 = classify(dual(ek_bundle(3, 2, ctx)), ctx);
  CHECK(d2.c == BundleCase::SteinerDual);
  CHECK(d2.a == 6);
  CHECK(d2.b == 1);
  ClassificationResult p2 = classify(dual(ek_bundle(2, 2, ctx)), ctx);
  CHECK(p2.c == BundleCase::SteinerE);
  CHECK(p2.a == 3);
  CHECK(p2.b == 1);
}

TEST_CASE("rigid decomposition of direct sums") {
  Context ctx = Context::make(FieldKind::Prime, 5);
  FreeComplex e2 = ek_bundle(2, 2, ctx);
  FreeComplex sum = direct_sum(e2, e2);
  ClassificationResult r = classify(sum, ctx);
  CHECK(r.rigid == std::vector<std::pair<int, long long>>{{2, 2}});
  auto comps = rigid_decompose(sum, ctx);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].k == 2);
  CHECK(comps[0].mult == 2);
}

TEST_CASE("acm check detects intermediate cohomology") {
  Context ctx = Context::make(FieldKind::Prime, 6);
  AcmReport good = acm_check(line_bundle(2, 0), 3, ctx);
  CHECK(good.ok);
  CHECK(good.bad.empty());
  // F_2 on P^2 has h^1(F_2(-1)) = 3 != 0, and -1 is not a multiple of 3,
  // but h^1(F_2(-1+0*3))... use d=1 so every twist is tested.
  AcmReport badrep = acm_check(fib_bundle(2, 2, ctx), 1, ctx);
  CHECK_FALSE(badrep.ok);
  CHECK(!badrep.bad.empty());
  // E_2 is ACM for the cubic Veronese
  AcmReport e2 = acm_check(ek_bundle(2, 2, ctx), 3, ctx);
  CHECK(e2.ok);
}

TEST_CASE("classification json") {
  Context ctx = Context::make(FieldKind::Prime, 7);
  ClassificationResult r = classify(ek_bundle(2, 2, ctx), ctx);
  std::string js = classification_to_json(r);
  CHECK(js.find("\"case\"") != std::string::npos);
  CHECK(js.find("\"rigid\"") != std::string::npos);
}
