#include "selftest.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "acm/cech.hpp"
#include "acm/classify.hpp"
#include "acm/complex.hpp"
#include "acm/fib.hpp"
#include "acm/kron.hpp"
#include "acm/veronese4.hpp"

namespace acm::selftest {

namespace {

struct Crit {
  std::vector<std::string> fails;
  std::vector<std::string> notes;

  void req(bool ok, const std::string& msg) {
    if (!ok) fails.push_back(msg);
  }
  template <class A, class B>
  void eq(const A& got, const B& want, const std::string& what) {
    if (!(got == static_cast<A>(want))) {
      std::ostringstream ss;
      ss << what << ": got " << got << ", want " << want;
      fails.push_back(ss.str());
    }
  }
};

long long fib_ll(int l, int k) { return fibonacci(l, k).convert_to<long long>(); }

long long get(const std::map<int, long long>& m, int i) {
  auto it = m.find(i);
  return it == m.end() ? 0 : it->second;
}

// --- criterion 1: Fibonacci tables -----------------------------------------

void crit1(Crit& c, const Context&) {
  const long long want3[] = {0, 1, 3, 8, 21, 55, 144};
  const long long want6[] = {0, 1, 6, 35, 204, 1189, 6930};
  for (int k = 0; k <= 6; ++k) {
    c.eq(fib_ll(3, k), want3[k], "a_{3," + std::to_string(k) + "}");
    c.eq(fib_ll(6, k), want6[k], "a_{6," + std::to_string(k) + "}");
  }
  for (int l : {3, 6})
    for (int k = 1; k <= 8; ++k)
      c.eq(fibonacci(l, k + 1), l * fibonacci(l, k) - fibonacci(l, k - 1),
           "recursion l=" + std::to_string(l) + " k=" + std::to_string(k));
}

// --- criterion 2: intermediate cohomology of F_k on P^2 ---------------------

void crit2(Crit& c, const Context& ctx) {
  for (int k = 1; k <= 4; ++k) {
    FreeComplex f = fib_bundle(2, k, ctx);
    CohomologyTable tab = cohomology_table(f, -5, 2, ctx);
    for (int t = -5; t <= 2; ++t) {
      long long want = t == -1 ? fib_ll(3, k) : t == -2 ? fib_ll(3, k - 1) : 0;
      c.eq(tab.at(1, t), want,
           "h^1(F_" + std::to_string(k) + "(" + std::to_string(t) + ")) on P^2");
    }
  }
}

// --- criterion 3: intermediate cohomology of F_k on P^3 ---------------------

void crit3(Crit& c, const Context& ctx) {
  for (int k = 1; k <= 2; ++k) {
    FreeComplex f = fib_bundle(3, k, ctx);
    CohomologyTable tab = cohomology_table(f, -6, 2, ctx);
    for (int t = -6; t <= 2; ++t)
      for (int i = 1; i <= 2; ++i) {
        long long want = 0;
        if (i == 1 && t == -1) want = fib_ll(6, k);
        if (i == 2 && t == -3) want = fib_ll(6, k - 1);
        c.eq(tab.at(i, t), want,
             "h^" + std::to_string(i) + "(F_" + std::to_string(k) + "(" +
                 std::to_string(t) + ")) on P^3");
      }
  }
}

// --- criterion 4: Hom/Ext reciprocity on sheaves and on the quiver ----------

void crit4(Crit& c, const Context& ctx) {
  std::map<int, FreeComplex> f;
  for (int k = -2; k <= 4; ++k) f.emplace(k, fib_bundle(2, k, ctx));
  for (int k = -2; k <= 4; ++k)
    for (int j = k + 1; j <= 4; ++j) {
      auto down = ext_groups(f.at(j), f.at(k), ctx);
      auto up = ext_groups(f.at(k), f.at(j), ctx);
      std::string pair = "(F_" + std::to_string(k) + ",F_" + std::to_string(j) + ")";
      c.req(down == std::vector<long long>{0, fib_ll(3, j - k - 1), 0},
            "ext" + pair + " downward pattern");
      c.req(up == std::vector<long long>{fib_ll(3, j - k + 1), 0, 0},
            "ext" + pair + " upward pattern");
    }

  for (int l : {3, 6}) {
    std::map<int, KroneckerRep> r;
    std::map<int, bool> cert;
    for (int k = -5; k <= 5; ++k) {
      bool ok = true;
      r.emplace(k, rk_rep(l, k, ctx, &ok));
      cert[k] = ok;
      if (!ok)
        c.notes.push_back("l=" + std::to_string(l) + ": rigidity of R_" +
                          std::to_string(k) + " not certified (resource guard)");
    }
    int skipped = 0;
    for (int k = -5; k <= 5; ++k)
      for (int j = k + 1; j <= 5; ++j) {
        bool mixed = k <= 0 && j >= 1;
        std::string pair = "l=" + std::to_string(l) + " (R_" + std::to_string(k) +
                           ",R_" + std::to_string(j) + ")";
        try {
          HomExt down = hom_ext(r.at(j), r.at(k), ctx);
          long long m = fib_ll(l, j - k - 1);
          c.eq(down.hom, mixed ? m : 0, pair + " hom down");
          c.eq(down.ext1, mixed ? 0 : m, pair + " ext down");
        } catch (const ResourceError&) {
          ++skipped;
        }
        try {
          HomExt up = hom_ext(r.at(k), r.at(j), ctx);
          long long m = fib_ll(l, j - k + 1);
          c.eq(up.hom, mixed ? 0 : m, pair + " hom up");
          c.eq(up.ext1, mixed ? m : 0, pair + " ext up");
        } catch (const ResourceError&) {
          ++skipped;
        }
      }
    if (skipped)
      c.notes.push_back("l=" + std::to_string(l) + ": " + std::to_string(skipped) +
                        " oversized pairs skipped by the resource guard");
  }
}

// --- criterion 5: exceptionality and ACM property of E_k --------------------

void crit5(Crit& c, const Context& ctx) {
  for (auto [n, kmax] : {std::pair{2, 4}, std::pair{3, 3}}) {
    int d = n == 2 ? 3 : 2;
    for (int k = 1; k <= kmax; ++k) {
      FreeComplex e = ek_bundle(n, k, ctx);
      std::string name = "E_" + std::to_string(k) + " on P^" + std::to_string(n);
      std::vector<long long> want(n + 1, 0);
      want[0] = 1;
      c.req(ext_groups(e, e, ctx) == want, name + " is exceptional");
      AcmReport rep = acm_check(e, d, ctx);
      c.req(rep.ok, name + " is ACM");
      AcmReport repd = acm_check(dual(e), d, ctx);
      c.req(repd.ok, name + " dual is ACM");
    }
  }
}

// --- criterion 6: classification round trip ---------------------------------

void crit6(Crit& c, const Context& ctx) {
  std::mt19937_64 rng(ctx.seed * 0x5851f42d4c957f2dull + 6);
  for (auto [n, kmax] : {std::pair{2, 4}, std::pair{3, 3}}) {
    int l = arrows_for(n);
    for (int k = 1; k <= kmax; ++k) {
      FreeComplex e = ek_bundle(n, k, ctx);
      ClassificationResult base = classify(e, ctx);
      std::string name = "E_" + std::to_string(k) + " on P^" + std::to_string(n);
      c.eq(base.a, fib_ll(l, k), name + " presentation a");
      c.eq(base.b, fib_ll(l, k - 1), name + " presentation b");
      c.req(base.rigid == std::vector<std::pair<int, long long>>{{k, 1}},
            name + " rigid decomposition");
      for (int trial = 0; trial < 2; ++trial) {
        int s = (int)(rng() % 5) - 2;
        ClassificationResult res = classify(twist(e, s), ctx);
        c.eq(res.a, base.a, name + " twisted a (s=" + std::to_string(s) + ")");
        c.eq(res.b, base.b, name + " twisted b (s=" + std::to_string(s) + ")");
        c.eq(res.s + s, base.s, name + " normalization recovers s=" + std::to_string(s));
        c.req(res.rigid == base.rigid, name + " twisted rigid decomposition");
      }
    }
  }
}

// --- criterion 7: Kac decomposition vs generic rigidity ---------------------

void crit7(Crit& c, const Context& ctx) {
  std::mt19937_64 rng(ctx.seed * 0x9e3779b97f4a7c15ull + 7);
  for (int l : {3, 6})
    for (int i = 0; i < 100; ++i) {
      DimVector v;
      v.a = (long long)(rng() % 13);
      v.b = (long long)(rng() % (13 - v.a));
      bool decomposes = kac_decompose(l, v).has_value();
      KroneckerRep rep = generic_rep(l, v, rng(), ctx);
      bool rigid = hom_ext(rep, rep, ctx).ext1 == 0;
      if (decomposes != rigid) {
        std::ostringstream ss;
        ss << "l=" << l << " v=(" << v.a << "," << v.b << "): kac says "
           << decomposes << ", generic ext^1=0 says " << rigid;
        c.fails.push_back(ss.str());
      }
    }
}

// --- criterion 8: numerical twist selection for quartic/quintic Veronese ----

void crit8(Crit& c, const Context& ctx) {
  std::vector<std::pair<std::string, FreeComplex>> suite;
  suite.emplace_back("O", line_bundle(2, 0));
  suite.emplace_back("O(1)", line_bundle(2, 1));
  suite.emplace_back("Omega(1)", koszul_model(2, 1, 1));
  suite.emplace_back("F_2", fib_bundle(2, 2, ctx));
  suite.emplace_back("F_3", fib_bundle(2, 3, ctx));
  suite.emplace_back("E_2", ek_bundle(2, 2, ctx));
  suite.emplace_back("E_3", ek_bundle(2, 3, ctx));
  for (auto& [name, cx] : suite) {
    ChernData cd = chern(cx);
    cpp_rational r = cd.r;
    c.req(discriminant(cd) == cpp_rational(5) * r * r / 4 - 1,
          name + ": discriminant is 5r^2/4 - 1");
    c.req(discriminant(cd) == cpp_rational(5) * r * r / 4 - chi_pair(cd, cd),
          name + ": discriminant matches 5r^2/4 - chi(E,E)");
    for (int d : {4, 5}) {
      TwistReport rep = find_acm_twist(cd, d);
      c.req((int)rep.bad.size() <= 3,
            name + ": at most 3 obstructed twists (d=" + std::to_string(d) + ")");
      AcmReport ac = acm_check(twist(cx, rep.t), d, ctx);
      c.req(ac.ok, name + "(" + std::to_string(rep.t) + ") is ACM for d=" +
                       std::to_string(d));
    }
  }
}

// --- criterion 9: oracle self-consistency ------------------------------------

void crit9(Crit& c, const Context& ctx) {
  for (int n : {2, 3})
    for (int d = -8; d <= 8; ++d) {
      FreeComplex o = line_bundle(n, 0);
      auto brute = hypercohomology_brute(o, d, ctx);
      auto trans = hypercohomology_transfer(o, d, ctx);
      for (int i = 0; i <= n; ++i) {
        long long want = h_line_bundle(n, i, d);
        std::string what = "h^" + std::to_string(i) + "(P^" + std::to_string(n) +
                           ", O(" + std::to_string(d) + "))";
        c.eq(get(brute, i), want, what + " brute");
        c.eq(get(trans, i), want, what + " transfer");
      }
    }

  std::vector<std::pair<std::string, FreeComplex>> suite;
  suite.emplace_back("F_2/P^2", fib_bundle(2, 2, ctx));
  suite.emplace_back("F_3/P^2", fib_bundle(2, 3, ctx));
  suite.emplace_back("E_2/P^2", ek_bundle(2, 2, ctx));
  suite.emplace_back("F_2/P^3", fib_bundle(3, 2, ctx));
  for (auto& [name, cx] : suite) {
    int n = cx.n;
    FreeComplex dx = dual(cx);
    ChernData cd = chern(cx);
    for (int t = -4; t <= 1; ++t) {
      auto h = hypercohomology(cx, t, ctx);
      auto hd = hypercohomology(dx, -t - n - 1, ctx);
      cpp_rational euler = 0;
      for (int i = 0; i <= n; ++i) {
        euler += (i % 2 ? -1 : 1) * get(h, i);
        c.eq(get(h, i), get(hd, n - i),
             name + ": Serre duality at (i,t)=(" + std::to_string(i) + "," +
                 std::to_string(t) + ")");
      }
      c.req(euler == chi_twist(cd, t),
            name + ": Euler characteristic matches Riemann-Roch at t=" +
                std::to_string(t));
    }
  }

  for (auto& [name, cx] : suite) {
    if (cx.n != 2) continue;
    for (int t : {-3, 0}) {
      int m = cech_truncation_order(cx, t);
      c.req(hypercohomology_brute(cx, t, ctx) ==
                hypercohomology_brute(cx, t, ctx, m + 1),
            name + ": truncation order M vs M+1 at t=" + std::to_string(t));
    }
  }

  Context rat = Context::make(FieldKind::Rational, ctx.seed);
  for (int k = 1; k <= 2; ++k) {
    FreeComplex f = fib_bundle(2, k, ctx);
    CohomologyTable a = cohomology_table(f, -3, 1, ctx);
    CohomologyTable b = cohomology_table(f, -3, 1, rat);
    c.req(a.h == b.h, "F_" + std::to_string(k) +
                          "/P^2: prime-field vs rational cohomology tables");
  }
  FreeComplex f1 = fib_bundle(2, 1, ctx), f2 = fib_bundle(2, 2, ctx);
  c.req(ext_groups(f1, f2, ctx) == ext_groups(f1, f2, rat),
        "ext(F_1,F_2): prime-field vs rational");
}

}  // namespace

int run(const Options& opt, std::ostream& out) {
  Context ctx = Context::make(opt.field, opt.seed);
  struct Entry {
    int id;
    const char* name;
    std::function<void(Crit&, const Context&)> fn;
  };
  const Entry entries[] = {
      {1, "Fibonacci tables and recursion", crit1},
      {2, "intermediate cohomology of F_k on P^2", crit2},
      {3, "intermediate cohomology of F_k on P^3", crit3},
      {4, "Hom/Ext reciprocity (sheaf and quiver)", crit4},
      {5, "E_k exceptional and ACM (with dual)", crit5},
      {6, "classification round trip", crit6},
      {7, "Kac decomposition vs generic rigidity", crit7},
      {8, "quartic/quintic twist selection", crit8},
      {9, "oracle self-consistency", crit9},
  };
  int failed = 0;
  for (const Entry& e : entries) {
    Crit c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(c, ctx);
    } catch (const std::exception& ex) {
      c.fails.push_back(std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    if (c.fails.empty()) {
      out << "criterion " << e.id << ": PASS - " << e.name << " (" << buf << ")\n";
    } else {
      ++failed;
      out << "criterion " << e.id << ": FAIL - " << e.name << " (" << buf << ")\n";
      for (size_t i = 0; i < c.fails.size() && i < 8; ++i)
        out << "    " << c.fails[i] << "\n";
      if (c.fails.size() > 8)
        out << "    ... " << (c.fails.size() - 8) << " more failures\n";
    }
    for (const std::string& n : c.notes) out << "    note: " << n << "\n";
    out.flush();
  }
  return failed;
}

}  // namespace acm::selftest
