// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select criteria by number.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "idalkit/glued.hpp"
#include "idalkit/localize.hpp"
#include "workspace.hpp"

using namespace idalkit;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict()> run;
};

RingPtr qx() { return PolyRing::make(Field{}, {"x"}); }
RingPtr qxy() { return PolyRing::make(Field{}, {"x", "y"}); }

// dense random polynomial of total degree <= d, small integer coefficients
Poly random_poly(const PolyRing& r, std::mt19937& rng, unsigned d, int span = 3) {
  std::uniform_int_distribution<int> c(-span, span), keep(0, 2);
  Poly p;
  std::vector<unsigned> e(r.nvars(), 0);
  std::function<void(std::size_t, unsigned)> walk = [&](std::size_t v, unsigned left) {
    if (v == r.nvars()) {
      if (keep(rng) == 0) return;
      Poly m = r.constant(Coeff(c(rng)));
      for (std::size_t k = 0; k < e.size(); ++k) m = r.mul(m, r.pow(r.var(k), e[k]));
      p = r.add(p, m);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      walk(v + 1, left - k);
    }
    e[v] = 0;
  };
  walk(0, d);
  return p;
}

Poly random_nonzero(const PolyRing& r, std::mt19937& rng, unsigned d) {
  for (;;) {
    Poly p = random_poly(r, rng, d);
    if (!p.is_zero()) return p;
  }
}

// graded module over Q[x]: up to two generators in degrees 0..1, relations of degree <= 3
PresentedModule random_graded(const RingPtr& r, std::mt19937& rng) {
  std::uniform_int_distribution<int> gens(1, 2), gdeg(0, 1), nrel(0, 2), c(-3, 3);
  std::size_t g = static_cast<std::size_t>(gens(rng));
  Grading gr(g);
  for (auto& d : gr) d = gdeg(rng);
  long top = *std::max_element(gr.begin(), gr.end());
  std::uniform_int_distribution<long> rdeg(top, 3);
  std::vector<Column> rels;
  for (int k = nrel(rng); k > 0; --k) {
    long d = rdeg(rng);
    Column col(g);
    for (std::size_t i = 0; i < g; ++i) col[i] = r->mul(r->constant(Coeff(c(rng))), r->pow(r->var(0), d - gr[i]));
    if (!column_is_zero(col)) rels.push_back(col);
  }
  return PresentedModule(r, g, rels, gr);
}

// module over a one-variable ring: up to two generators, relation entries of degree <= 2
PresentedModule random_module(const RingPtr& r, std::mt19937& rng) {
  std::uniform_int_distribution<int> gens(1, 2), nrel(0, 2);
  std::size_t g = static_cast<std::size_t>(gens(rng));
  std::vector<Column> rels;
  for (int k = nrel(rng); k > 0; --k) {
    Column col(g);
    for (auto& p : col) p = random_poly(*r, rng, 2);
    if (!column_is_zero(col)) rels.push_back(col);
  }
  return PresentedModule(r, g, rels);
}

std::string poly_str(const PolyRing& r, const Poly& p) { return r.format(p); }

// ---------------------------------------------------------------- criteria

Verdict idal_law() {
  Verdict v;
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> kd(1, 3);
  RingPtr rings[] = {qx(), qxy()};
  int reflected_isos = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const RingPtr& r = rings[trial % 2];
    std::size_t k = static_cast<std::size_t>(kd(rng));
    Column row;
    for (std::size_t i = 0; i < k; ++i) row.push_back(random_poly(*r, rng, 2));
    ModuleMap f{free_module(r, k), unit_module(r), {}};
    for (const auto& p : row) f.matrix.push_back(Column{p});
    auto refl = idal_reflect(f);
    if (!idal_check(refl.idal.e)) {
      v.fail("trial " + std::to_string(trial) + ": reflection fails idal_check");
      continue;
    }
    auto again = idal_reflect(refl.idal.e);
    if (!is_iso(again.pi)) {
      v.fail("trial " + std::to_string(trial) + ": reflecting an idal gives non-iso pi");
      continue;
    }
    ++reflected_isos;
  }
  v.detail = v.ok ? std::to_string(reflected_isos) + "/200 maps" : v.detail;
  return v;
}

Verdict deligne_oracle() {
  Verdict v;
  std::mt19937 rng(2);
  auto r = qx();
  auto j = principal_idal(r, r->var(0));
  std::size_t worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_graded(r, rng);
    auto w = deligne_window(j, unit_module(r), m, localization_oracle(r->var(0), m), 5, 8);
    if (!w.stable_stage) {
      v.fail("module " + std::to_string(trial) + ": window did not stabilize by n = 8");
    } else if (!w.agrees) {
      v.fail("module " + std::to_string(trial) + ": windowed dimensions differ from oracle");
    } else {
      worst = std::max(worst, *w.stable_stage);
    }
  }
  // control: O itself is not its own localization
  auto o = unit_module(r);
  if (deligne_window(j, o, o, o, 5, 8).agrees) v.fail("control: window accepts O as the localization of O");
  if (v.ok) v.detail = "20 modules, |d| <= 5, window stable by n = " + std::to_string(worst);
  return v;
}

Verdict hartogs() {
  Verdict v;
  auto r = qxy();
  auto j = idal_from_ideal({r->var(0), r->var(1)}, r);
  auto res = reflect(j, unit_module(r), 8, 3);
  const auto& c = res.chain;
  if (!c.stabilized_at) return v.fail("chain truncated"), v;
  if (c.transitions.size() < 3 || !is_iso(c.transitions[1]) || !is_iso(c.transitions[2]))
    v.fail("transitions 1 and 2 are not both iso");
  if (!is_iso(res.unit)) v.fail("canonical comparison O -> value is not iso");
  if (v.ok) v.detail = "transitions 1, 2 iso; value = O (reported stabilized_at = " + std::to_string(*c.stabilized_at) + ")";
  return v;
}

Verdict glue_roundtrip() {
  Verdict v;
  std::mt19937 rng(3);
  int exact = 0, total = 0;
  auto run_cover = [&](const RingPtr& r, const char* other, int count) {
    auto i = principal_idal(r, r->var(0)), j = principal_idal(r, r->parse(other));
    for (int trial = 0; trial < count; ++trial) {
      auto m = random_module(r, rng);
      auto rt = roundtrip_check(i, j, m, 8, 6);
      ++total;
      if (rt.exact) ++exact;
      if (!rt.holds()) v.fail(r->describe() + " module " + std::to_string(trial) + " fails the round trip");
    }
  };
  run_cover(qx(), "x-1", 20);
  run_cover(PolyRing::make(Field{5}, {"x"}), "x+1", 10);
  if (v.ok) v.detail = std::to_string(total) + " modules, " + std::to_string(exact) + " exact";
  return v;
}

// independent oracle: monomials t^i with 0 <= i <= n span the sections of O(n)
std::size_t p1_monomial_count(long n) {
  std::size_t c = 0;
  for (long i = 0; i <= n; ++i) ++c;
  return c;
}

Verdict p1_sections() {
  Verdict v;
  std::ostringstream dims;
  for (long n = -3; n <= 5; ++n) {
    auto s = global_sections(p1_standard(n), 6);
    dims << (n > -3 ? "," : "") << s.total;
    if (s.total != p1_monomial_count(n))
      v.fail("O(" + std::to_string(n) + "): " + std::to_string(s.total) + " != " + std::to_string(p1_monomial_count(n)));
  }
  if (v.ok) v.detail = "dims n=-3..5: " + dims.str();
  return v;
}

GluedMorphism chartwise_identity(const GluedModule& from, const GluedModule& to) {
  return GluedMorphism{from, to, ModuleMap{from.m1, to.m1, identity_map(from.m1).matrix},
                       ModuleMap{from.m2, to.m2, identity_map(from.m2).matrix}};
}

Verdict serre() {
  Verdict v;
  int pairs = 0;
  for (long a = -3; a <= 3; ++a) {
    for (long b = -3; b <= 3; ++b) {
      auto t = tensor_glued(p1_standard(a), p1_standard(b));
      if (!is_glued_iso(chartwise_identity(t, p1_standard(a + b))))
        v.fail("O(" + std::to_string(a) + ") x O(" + std::to_string(b) + ") not iso to O(a+b)");
      else
        ++pairs;
    }
    auto inv = invertible_check(p1_standard(a));
    if (!inv.holds() || !inv.inverse) {
      v.fail("O(" + std::to_string(a) + ") not certified invertible");
      continue;
    }
    if (!is_glued_iso(chartwise_identity(*inv.inverse, p1_standard(-a))))
      v.fail("inverse of O(" + std::to_string(a) + ") is not O(-a)");
  }
  if (v.ok) v.detail = std::to_string(pairs) + " pairs, 7 inverses";
  return v;
}

Verdict cover_powers() {
  Verdict v;
  std::mt19937 rng(4);
  auto r = qx();
  std::uniform_int_distribution<int> root(-4, 4), kind(0, 1);
  int checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Poly f, g, h;
    if (kind(rng) == 0) {
      // Bezout by construction: a f + (1 - a f) = 1
      f = random_nonzero(*r, rng, 2);
      g = r->sub(r->one(), r->mul(random_nonzero(*r, rng, 1), f));
      h = r->sub(r->one(), r->mul(random_nonzero(*r, rng, 1), f));
    } else {
      // distinct roots
      int a = root(rng), b = root(rng), c = root(rng), d = root(rng);
      while (c == a || c == b) c = root(rng);
      while (d == a || d == b) d = root(rng);
      auto lin = [&](int s) { return r->sub(r->var(0), r->constant(Coeff(s))); };
      f = r->mul(lin(a), lin(b));
      g = lin(c);
      h = r->mul(lin(d), lin(d));
    }
    auto i = principal_idal(r, f), j = principal_idal(r, g), k = principal_idal(r, h);
    std::string tag = "(" + poly_str(*r, f) + "), (" + poly_str(*r, g) + ")";
    if (!cover_check(i, j)) {
      v.fail("base pair " + tag + " is not a cover");
      continue;
    }
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t m = 1; m <= 3; ++m, ++checks)
        if (!cover_check(idal_tensor_power(i, n), idal_tensor_power(j, m)))
          v.fail(tag + " powers " + std::to_string(n) + "," + std::to_string(m) + " not a cover");
    if (!cover_check(i, k)) {
      v.fail("second pair for " + tag + " is not a cover");
      continue;
    }
    ++checks;
    if (!cover_check(i, idal_product(j, k))) v.fail(tag + ": product cover closure fails");
  }
  if (v.ok) v.detail = std::to_string(checks) + " cover checks on 50 covers";
  return v;
}

Verdict intersection() {
  Verdict v;
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> shape(0, 2), mshape(0, 2);
  RingPtr rings[] = {qx(), qxy()};
  auto random_idal = [&](const RingPtr& r) {
    switch (shape(rng)) {
      case 0: return principal_idal(r, random_nonzero(*r, rng, 2));
      case 1: return idal_from_ideal({random_nonzero(*r, rng, 1), random_nonzero(*r, rng, 2)}, r);
      default: return identity_idal(r);
    }
  };
  int agreeing[2] = {0, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const RingPtr& r = rings[trial % 2];
    auto i = random_idal(r), j = random_idal(r);
    PresentedModule m;
    switch (mshape(rng)) {
      case 0: m = unit_module(r); break;
      case 1: m = PresentedModule(r, 1, {Column{random_nonzero(*r, rng, 2)}}); break;
      default: m = PresentedModule(r, 2, {Column{random_poly(*r, rng, 1), random_poly(*r, rng, 1)}}); break;
    }
    auto rep = intersection_report(i, j, m);
    if (!rep.holds())
      v.fail("triple " + std::to_string(trial) + " over " + r->describe() + " breaks the intersection law");
    else
      ++agreeing[rep.product ? 1 : 0];
  }
  if (v.ok) v.detail = "100 triples (" + std::to_string(agreeing[1]) + " in C_IJ, " + std::to_string(agreeing[0]) + " outside)";
  return v;
}

Verdict nilpotency() {
  Verdict v;
  auto q = PolyRing::make(Field{}, {"x"}, Order::Grevlex, {"x^3"});
  auto e = principal_idal(q, q->var(0));
  auto n = nilpotency_check(e, 8);
  if (!n || *n != 3) v.fail("nilpotency_check over Q[x]/(x^3) is not 3");
  auto rq = reflect(e, unit_module(q), 8);
  if (!rq.chain.stabilized_at || !is_zero(rq.chain.value)) v.fail("reflect(O) over Q[x]/(x^3) does not stabilize to 0");
  auto r = qx();
  auto ex = principal_idal(r, r->var(0));
  if (nilpotency_check(ex, 8)) v.fail("x on Q[x] reported nilpotent");
  auto rx = reflect(ex, unit_module(r), 8);
  if (!rx.chain.truncated || rx.chain.stabilized_at) v.fail("reflect over Q[x] did not truncate");
  if (v.ok) v.detail = "n = 3, collapse to 0; Q[x] absent and truncated";
  return v;
}

Verdict doubleorigin2() {
  Verdict v;
  auto r = PolyRing::make(Field{}, {"T1", "T2"});
  Poly t1 = r->var(0), t2 = r->var(1);
  ModuleMap f{free_module(r, 2), unit_module(r), {Column{t1}, Column{t2}}};
  auto k = kernel(f);
  Column koszul{t2, r->neg(t1)};
  if (!column_is_zero(apply_map(f, koszul))) v.fail("(T2, -T1) is not in the kernel");
  Lifter in_span(*r, 2, {koszul}, {});
  for (const auto& col : k.incl.matrix)
    if (!in_span.lift(col)) v.fail("kernel generator outside <(T2, -T1)>");
  Lifter in_kernel(*r, 2, k.incl.matrix, {});
  if (!in_kernel.lift(koszul)) v.fail("(T2, -T1) not generated by the computed kernel");
  auto d = doubleorigin2_canonical(r);
  auto rep = doubleorigin2_datum_check(d.j1, d.j2, d.p);
  for (const auto& [clause, ok] : rep.clauses)
    if (!ok) v.fail("canonical datum clause fails: " + clause);
  if (v.ok) v.detail = "kernel = <(T2,-T1)>, " + std::to_string(rep.clauses.size()) + " datum clauses";
  return v;
}

Verdict generation(const std::string& preset_dir) {
  Verdict v;
  auto check = [&](const GluedModule& g, const std::string& tag) {
    try {
      auto r = idal_generation(g);
      if (!is_surjective(r.epi.g1) || !is_surjective(r.epi.g2)) v.fail(tag + ": epi not surjective");
      if (!is_glued_morphism(r.epi)) v.fail(tag + ": epi not a glued morphism");
    } catch (const Error& e) {
      v.fail(tag + ": " + e.what());
    }
  };
  for (long n = -2; n <= 2; ++n) check(p1_standard(n), "O(" + std::to_string(n) + ")");
  idalc::Workspace ws;
  ws.add_file(preset_dir + "/p1.json");
  for (const char* name : {"P1_sky_0", "P1_sky_inf", "P1_sky_1"}) check(ws.glued(name), name);
  if (v.ok) v.detail = "O(-2..2) and 3 skyscrapers";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::string preset_dir = IDALC_PRESET_DIR;
  std::vector<Criterion> all = {
      {1, "idal law on 200 random maps", 60, idal_law},
      {2, "Deligne chain vs localization oracle", 120, deligne_oracle},
      {3, "punctured-plane reflection", 10, hartogs},
      {4, "glue round trip", 180, glue_roundtrip},
      {5, "P1 section dimensions", 30, p1_sections},
      {6, "Serre twist group law", 30, serre},
      {7, "cover-power and product closure", 60, cover_powers},
      {8, "intersection law", 120, intersection},
      {9, "nilpotency collapse", 10, nilpotency},
      {10, "doubleorigin2 exactness", 10, doubleorigin2},
      {11, "idal generation", 60, [&] { return generation(preset_dir); }},
  };
  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) v.fail("runtime " + std::to_string(secs) + " s exceeds limit");
    if (!v.ok) ++failures;
    std::printf("criterion %2d: %s  %-38s %7.2fs / %.0fs  %s\n", c.id, v.ok ? "PASS" : "FAIL", c.name, secs,
                c.limit_s, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
