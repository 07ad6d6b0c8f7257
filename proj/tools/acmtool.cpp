#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "acm/cech.hpp"
#include "acm/classify.hpp"
#include "acm/complex.hpp"
#include "acm/fib.hpp"
#include "acm/kron.hpp"
#include "acm/veronese4.hpp"
#include "json.hpp"
#include "selftest.hpp"

using namespace acm;
using nlohmann::json;

namespace {

struct Cli {
  std::string field = "prime";
  u64 seed = 1;
  std::string format = "table";
  std::string window;

  Context ctx() const {
    return Context::make(field == "rational" ? FieldKind::Rational : FieldKind::Prime, seed);
  }
  bool js() const { return format == "json"; }

  std::pair<int, int> parse_window(int lo, int hi) const {
    if (window.empty()) return {lo, hi};
    auto colon = window.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--window expects a:b");
    return {std::stoi(window.substr(0, colon)), std::stoi(window.substr(colon + 1))};
  }
};

DimVector parse_dim(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--dim expects a,b");
  return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

FreeComplex build_family(const std::string& family, int n, int k, int s, const Context& ctx) {
  FreeComplex c;
  if (family == "fib")
    c = fib_bundle(n, k, ctx);
  else if (family == "ek")
    c = ek_bundle(n, k, ctx);
  else
    throw std::invalid_argument("unknown family '" + family + "' (fib|ek)");
  return s ? twist(c, s) : c;
}

FreeComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  FreeComplex c = complex_from_json(ss.str());
  if (!dd_ok(c)) throw std::invalid_argument(path + ": differentials do not square to zero");
  return c;
}

json certificate(const Context& ctx) {
  json j;
  j["field"] = ctx.kind == FieldKind::Prime ? "prime" : "rational";
  if (ctx.kind == FieldKind::Prime) j["prime"] = ctx.fp.p;
  j["seed"] = ctx.seed;
  return j;
}

void print_cert_comment(const Context& ctx) {
  std::cout << "# field=" << (ctx.kind == FieldKind::Prime ? "prime" : "rational");
  if (ctx.kind == FieldKind::Prime) std::cout << " p=" << ctx.fp.p;
  std::cout << " seed=" << ctx.seed << "\n";
}

int cmd_fib(const Cli& cli, int l, int kmax) {
  if (kmax < 0) throw std::invalid_argument("--k-max must be nonnegative");
  if (l < 2) throw std::invalid_argument("--l must be at least 2");
  if (cli.js()) {
    json j;
    j["l"] = l;
    json arr = json::array();
    for (int k = 0; k <= kmax; ++k) arr.push_back(fibonacci(l, k).str());
    j["a"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "k\ta_{" << l << ",k}\n";
    for (int k = 0; k <= kmax; ++k) std::cout << k << "\t" << fibonacci(l, k) << "\n";
  }
  return 0;
}

int cmd_kron_decompose(const Cli& cli, int l, const std::string& dim) {
  DimVector v = parse_dim(dim);
  auto dec = kac_decompose(l, v);
  if (cli.js()) {
    json j;
    j["l"] = l;
    j["dim"] = {v.a, v.b};
    j["rigid"] = dec.has_value();
    if (dec) {
      json parts = json::array();
      for (auto& [k, m] : *dec) parts.push_back({k, m});
      j["decomposition"] = parts;
    }
    std::cout << j.dump(2) << "\n";
  } else if (dec) {
    std::cout << "(" << v.a << "," << v.b << ") =";
    for (auto& [k, m] : *dec) std::cout << " R_" << k << "^" << m;
    std::cout << "\n";
  } else {
    std::cout << "(" << v.a << "," << v.b << ") is not rigid\n";
  }
  return 0;
}

int cmd_kron_ext(const Cli& cli, int l, const std::string& dim, const std::string& other,
                 bool self) {
  Context ctx = cli.ctx();
  DimVector v = parse_dim(dim);
  DimVector w = self || other.empty() ? v : parse_dim(other);
  KroneckerRep a = generic_rep(l, v, ctx.seed + 17, ctx);
  KroneckerRep b = self || other.empty() ? a : generic_rep(l, w, ctx.seed + 31, ctx);
  HomExt he = hom_ext(a, b, ctx);
  if (cli.js()) {
    json j = certificate(ctx);
    j["l"] = l;
    j["dim"] = {v.a, v.b};
    j["other"] = {w.a, w.b};
    j["hom"] = he.hom;
    j["ext1"] = he.ext1;
    j["strategy"] = he.strategy;
    std::cout << j.dump(2) << "\n";
  } else {
    print_cert_comment(ctx);
    std::cout << "hom " << he.hom << "  ext1 " << he.ext1 << "  (" << he.strategy << ")\n";
  }
  return 0;
}

int cmd_bundle(const Cli& cli, const std::string& family, int n, int k, int s,
               const std::string& action, const std::string& other, int d) {
  Context ctx = cli.ctx();
  FreeComplex c = build_family(family, n, k, s, ctx);
  if (action == "cohomology") {
    auto [lo, hi] = cli.parse_window(-5, 2);
    CohomologyTable tab = cohomology_table(c, lo, hi, ctx);
    if (cli.js()) {
      std::cout << table_to_json(tab) << "\n";
    } else {
      print_cert_comment(ctx);
      std::cout << "i\\t";
      for (int t = lo; t <= hi; ++t) std::cout << "\t" << t;
      std::cout << "\n";
      for (int i = 0; i <= n; ++i) {
        std::cout << i;
        for (int t = lo; t <= hi; ++t) std::cout << "\t" << tab.at(i, t);
        std::cout << "\n";
      }
    }
    return 0;
  }
  if (action == "ext") {
    FreeComplex o = c;
    if (!other.empty()) {
      std::stringstream ss(other);
      std::string fam, ns, ks;
      std::getline(ss, fam, ':');
      std::getline(ss, ns, ':');
      std::getline(ss, ks, ':');
      if (fam.empty() || ns.empty() || ks.empty())
        throw std::invalid_argument("--other expects family:n:k");
      o = build_family(fam, std::stoi(ns), std::stoi(ks), 0, ctx);
      if (o.n != c.n) throw std::invalid_argument("--other lives on a different space");
    }
    std::vector<long long> eg = ext_groups(c, o, ctx);
    if (cli.js()) {
      json j = certificate(ctx);
      j["ext"] = eg;
      std::cout << j.dump(2) << "\n";
    } else {
      print_cert_comment(ctx);
      for (int i = 0; i <= n; ++i) std::cout << "ext^" << i << " = " << eg[i] << "\n";
    }
    return 0;
  }
  if (action == "acm") {
    int dd = d > 0 ? d : n == 2 ? 3 : 2;
    AcmReport rep = acm_check(c, dd, ctx);
    AcmReport repd = acm_check(dual(c), dd, ctx);
    if (cli.js()) {
      json j = certificate(ctx);
      j["d"] = dd;
      j["ok"] = rep.ok;
      j["dual_ok"] = repd.ok;
      j["window"] = {rep.table.tmin, rep.table.tmax};
      json bad = json::array();
      for (auto& [i, t] : rep.bad) bad.push_back({i, t});
      j["bad"] = bad;
      std::cout << j.dump(2) << "\n";
    } else {
      print_cert_comment(ctx);
      std::cout << "acm(d=" << dd << "): " << (rep.ok ? "ok" : "FAIL") << ", dual "
                << (repd.ok ? "ok" : "FAIL") << " (window [" << rep.table.tmin << ","
                << rep.table.tmax << "])\n";
    }
    return rep.ok && repd.ok ? 0 : 3;
  }
  if (action == "classify") {
    ClassificationResult r = classify(c, ctx);
    std::cout << classification_to_json(r) << "\n";
    return 0;
  }
  if (action == "chern") {
    ChernData cd = chern(c);
    if (cli.js()) {
      json j;
      j["n"] = cd.n;
      j["r"] = cd.r;
      j["c"] = {cd.c1.str(), cd.c2.str(), cd.c3.str()};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "(" << cd.r << ", " << cd.c1 << ", " << cd.c2;
      if (n == 3) std::cout << ", " << cd.c3;
      std::cout << ")\n";
    }
    return 0;
  }
  throw std::invalid_argument("unknown action '" + action + "'");
}

int cmd_classify_file(const Cli& cli, const std::string& path) {
  Context ctx = cli.ctx();
  FreeComplex c = load_complex(path);
  ClassificationResult r = classify(c, ctx);
  std::cout << classification_to_json(r) << "\n";
  return 0;
}

int cmd_acm_check_file(const Cli& cli, const std::string& path, int d) {
  Context ctx = cli.ctx();
  FreeComplex c = load_complex(path);
  AcmReport rep = acm_check(c, d, ctx);
  json j = certificate(ctx);
  j["d"] = d;
  j["ok"] = rep.ok;
  j["window"] = {rep.table.tmin, rep.table.tmax};
  json bad = json::array();
  for (auto& [i, t] : rep.bad) bad.push_back({i, t});
  j["bad"] = bad;
  std::cout << j.dump(2) << "\n";
  return rep.ok ? 0 : 3;
}

int cmd_veronese4(const Cli& cli, long long r, long long c1, long long c2, int d) {
  ChernData cd;
  cd.n = 2;
  cd.r = r;
  cd.c1 = c1;
  cd.c2 = c2;
  TwistReport rep = find_acm_twist(cd, d);
  if (cli.js()) {
    std::cout << twist_report_to_json(rep) << "\n";
  } else {
    std::cout << "t = " << rep.t << ", bad twists {";
    for (size_t i = 0; i < rep.bad.size(); ++i) std::cout << (i ? "," : "") << rep.bad[i];
    std::cout << "}, delta = " << rep.delta << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact oracle for rigid ACM bundle computations on P^2/P^3"};
  app.require_subcommand(1);
  Cli cli;
  app.add_option("--field", cli.field, "prime|rational")->check(CLI::IsMember({"prime", "rational"}));
  app.add_option("--seed", cli.seed, "seed for prime choice and generic matrices");
  app.add_option("--format", cli.format, "json|table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--window", cli.window, "twist window a:b");

  int l = 3, kmax = 6, n = 2, k = 1, s = 0, d = 0;
  std::string dim, other, action = "cohomology", family = "fib", input;
  bool self = false;

  auto* fib = app.add_subcommand("fib", "Fibonacci numbers a_{l,k}");
  fib->add_option("--l", l)->required();
  fib->add_option("--k-max", kmax)->required();

  auto* kron = app.add_subcommand("kron", "Kronecker quiver computations");
  kron->require_subcommand(1);
  auto* kdec = kron->add_subcommand("decompose", "Kac decomposition of a dimension vector");
  kdec->add_option("--l", l)->required();
  kdec->add_option("--dim", dim, "a,b")->required();
  auto* kext = kron->add_subcommand("ext", "hom/ext of generic representations");
  kext->add_option("--l", l)->required();
  kext->add_option("--dim", dim, "a,b")->required();
  kext->add_option("--other", other, "c,d");
  kext->add_flag("--self", self);

  auto* bundle = app.add_subcommand("bundle", "build a bundle and analyze it");
  bundle->add_option("--family", family, "fib|ek")->required();
  bundle->add_option("--n", n)->check(CLI::IsMember({2, 3}))->required();
  bundle->add_option("--k", k)->required();
  bundle->add_option("--s", s, "extra twist");
  bundle->add_option("--action", action, "cohomology|ext|acm|classify|chern")->required();
  bundle->add_option("--other", other, "family:n:k (for ext)");
  bundle->add_option("--d", d, "Veronese degree (for acm)");

  auto* cls = app.add_subcommand("classify", "classify a complex from JSON");
  cls->add_option("--input", input)->required();

  auto* acm_cmd = app.add_subcommand("acm-check", "intermediate cohomology vanishing");
  acm_cmd->add_option("--input", input)->required();
  acm_cmd->add_option("--d", d)->required();

  long long vr = 1, vc1 = 0, vc2 = 0;
  auto* ver = app.add_subcommand("veronese4", "twist selection from Chern data on P^2");
  ver->add_option("--r", vr)->required();
  ver->add_option("--c1", vc1)->required();
  ver->add_option("--c2", vc2)->required();
  ver->add_option("--d", d)->required();

  auto* self_cmd = app.add_subcommand("selftest", "run the full acceptance suite");

  for (CLI::App* sc : app.get_subcommands(nullptr)) {
    sc->fallthrough();
    for (CLI::App* nested : sc->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fib->parsed()) return cmd_fib(cli, l, kmax);
    if (kdec->parsed()) return cmd_kron_decompose(cli, l, dim);
    if (kext->parsed()) return cmd_kron_ext(cli, l, dim, other, self);
    if (bundle->parsed()) return cmd_bundle(cli, family, n, k, s, action, other, d);
    if (cls->parsed()) return cmd_classify_file(cli, input);
    if (acm_cmd->parsed()) return cmd_acm_check_file(cli, input, d);
    if (ver->parsed()) return cmd_veronese4(cli, vr, vc1, vc2, d);
    if (self_cmd->parsed()) {
      acm::selftest::Options opt;
      opt.field = cli.field == "rational" ? FieldKind::Rational : FieldKind::Prime;
      opt.seed = cli.seed;
      return acm::selftest::run(opt, std::cout) ? 3 : 0;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 4;
  } catch (const CertificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
