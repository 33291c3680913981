#include "idalkit/glued.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>

namespace idalkit {

namespace {

RingHom compose_hom(const RingHom& g, const RingHom& f) {
  RingHom h{f.source, g.target, {}};
  for (const auto& p : f.images) h.images.push_back(g.apply(p));
  return h;
}

std::optional<Poly> invert_in(const RingPtr& r, const Poly& p) {
  Lifter l(*r, 1, {Column{p}}, {});
  auto c = l.lift(Column{r->one()});
  if (!c) return std::nullopt;
  return r->normal_form((*c)[0]);
}

// polynomial of A[u]/(u f - 1) free of u, as an element of A
std::optional<Poly> strip_inverse(const Poly& p, const PolyRing& base) {
  std::vector<Term> terms;
  for (auto t : p.terms) {
    if (t.mono.exp[0]) return std::nullopt;
    for (std::size_t i = 0; i + 1 < kMaxVars; ++i) t.mono.exp[i] = t.mono.exp[i + 1];
    t.mono.exp[kMaxVars - 1] = 0;
    terms.push_back(std::move(t));
  }
  return base.normal_form(base.sort_raw(std::move(terms)));
}

Column map_entries(const RingHom& h, const Column& c) {
  Column out;
  for (const auto& p : c) out.push_back(h.apply(p));
  return out;
}

Column kron(const PolyRing& r, const Column& a, const Column& b) {
  Column out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i * b.size() + j] = r.mul(a[i], b[j]);
  }
  return out;
}

void require_same_scheme(const GluedModule& a, const GluedModule& b) {
  if (a.scheme != b.scheme && (a.scheme->name != b.scheme->name || !a.scheme->chart1->same_as(*b.scheme->chart1)))
    throw Error("scheme mismatch");
}

const Idal& glue_idal(const GluedModule& g) { return g.scheme->self().j; }

PresentedModule jpow(const Idal& j, std::size_t n) { return idal_tensor_power(j, n).carrier; }

// J^L (x) (A + B) -> A' + B' from level maps on the summands
std::vector<Column> sum_level_map(const Idal& j, const ModuleMap& fa, std::size_t ka, const PresentedModule& sa,
                                  const ModuleMap& fb, std::size_t kb, const PresentedModule& sb, std::size_t level) {
  ModuleMap ra = raise_level(j, fa, ka, level, sa), rb = raise_level(j, fb, kb, level, sb);
  std::size_t ga = sa.gens(), gb = sb.gens(), ta = fa.target.gens(), tb = fb.target.gens();
  std::size_t gj = jpow(j, level).gens();
  std::vector<Column> out;
  for (std::size_t p = 0; p < gj; ++p)
    for (std::size_t c = 0; c < ga + gb; ++c) {
      Column x(ta + tb);
      if (c < ga) {
        const Column& y = ra.matrix[p * ga + c];
        std::copy(y.begin(), y.end(), x.begin());
      } else {
        const Column& y = rb.matrix[p * gb + (c - ga)];
        std::copy(y.begin(), y.end(), x.begin() + static_cast<long>(ta));
      }
      out.push_back(std::move(x));
    }
  return out;
}

// (f (x) g) after regrouping J^a (x) J^b (x) M (x) N as (J^a (x) M) (x) (J^b (x) N)
std::vector<Column> tensor_level_map(const PolyRing& r, const ModuleMap& f, std::size_t gja, std::size_t gm,
                                     const ModuleMap& g, std::size_t gjb, std::size_t gn) {
  std::vector<Column> out;
  for (std::size_t p = 0; p < gja; ++p)
    for (std::size_t q = 0; q < gjb; ++q)
      for (std::size_t x = 0; x < gm; ++x)
        for (std::size_t y = 0; y < gn; ++y) out.push_back(kron(r, f.matrix[p * gm + x], g.matrix[q * gn + y]));
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, long bound) {
  std::vector<Monomial> out;
  Monomial m;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == nvars) {
      out.push_back(m);
      return;
    }
    for (long e = 0; e <= left; ++e) {
      m.exp[i] = static_cast<std::uint16_t>(e);
      m.deg += static_cast<std::uint32_t>(e);
      rec(i + 1, left - e);
      m.deg -= static_cast<std::uint32_t>(e);
    }
    m.exp[i] = 0;
  };
  rec(0, bound);
  return out;
}

// Hom(M, O) (x) M -> O
ModuleMap evaluation(const PresentedModule& m) {
  auto o = unit_module(m.ring());
  HomModule h(m, o);
  ModuleMap ev{tensor(h.module(), m), o, {}};
  for (std::size_t k = 0; k < h.module().gens(); ++k) {
    auto phi = h.generator(k);
    for (std::size_t i = 0; i < m.gens(); ++i) ev.matrix.push_back(Column{phi.matrix[i][0]});
  }
  return ev;
}

Lifter base_changed_hom_lifter(const HomModule& h, const RingHom& r) {
  std::vector<Column> gens, rels;
  for (const auto& c : h.inclusion().matrix) gens.push_back(map_entries(r, c));
  for (const auto& c : h.inclusion().target.relations()) rels.push_back(map_entries(r, c));
  return Lifter(*r.target, h.inclusion().target.gens(), gens, rels);
}

Column flatten(const ModuleMap& f) {
  Column amb;
  for (const auto& c : f.matrix) amb.insert(amb.end(), c.begin(), c.end());
  return amb;
}

}  // namespace

// ---------------------------------------------------------------- schemes

RingHom TwoChartScheme::restrict1() const { return aff().o1.from_base; }

RingHom TwoChartScheme::restrict2() const { return compose_hom(aff().to1, aff().o2.from_base); }

SchemePtr affine_scheme(const std::string& name, const RingPtr& a1, const std::string& f1, const std::string& inv1,
                        const RingPtr& a2, const std::string& f2, const std::string& inv2,
                        const std::vector<std::string>& images2, const std::vector<std::string>& images1) {
  if (images2.size() != a2->nvars() || images1.size() != a1->nvars()) throw Error("transition needs one image per variable");
  AffineOverlap ov;
  ov.f1 = a1->parse(f1);
  ov.f2 = a2->parse(f2);
  ov.o1 = localize_ring(a1, ov.f1, inv1);
  ov.o2 = localize_ring(a2, ov.f2, inv2);
  RingHom a2_to_o1{a2, ov.o1.ring, {}}, a1_to_o2{a1, ov.o2.ring, {}};
  for (const auto& s : images2) a2_to_o1.images.push_back(ov.o1.ring->parse(s));
  for (const auto& s : images1) a1_to_o2.images.push_back(ov.o2.ring->parse(s));
  auto u2 = invert_in(ov.o1.ring, a2_to_o1.apply(ov.f2));
  auto u1 = invert_in(ov.o2.ring, a1_to_o2.apply(ov.f1));
  if (!u2) throw Error("transition does not invert f2 on the overlap");
  if (!u1) throw Error("transition does not invert f1 on the overlap");
  ov.to1 = RingHom{ov.o2.ring, ov.o1.ring, {*u2}};
  ov.to1.images.insert(ov.to1.images.end(), a2_to_o1.images.begin(), a2_to_o1.images.end());
  ov.to2 = RingHom{ov.o1.ring, ov.o2.ring, {*u1}};
  ov.to2.images.insert(ov.to2.images.end(), a1_to_o2.images.begin(), a1_to_o2.images.end());
  if (!ov.to1.well_defined() || !ov.to2.well_defined()) throw Error("transition is not a ring homomorphism");
  for (std::size_t i = 0; i < ov.o1.ring->nvars(); ++i)
    if (ov.to1.apply(ov.to2.images[i]) != ov.o1.ring->var(i)) throw Error("transition maps are not mutually inverse");
  for (std::size_t i = 0; i < ov.o2.ring->nvars(); ++i)
    if (ov.to2.apply(ov.to1.images[i]) != ov.o2.ring->var(i)) throw Error("transition maps are not mutually inverse");
  auto s = std::make_shared<TwoChartScheme>();
  s->name = name;
  s->chart1 = a1;
  s->chart2 = a2;
  s->overlap = std::move(ov);
  return s;
}

SchemePtr self_glue_scheme(const std::string& name, const Idal& j) {
  if (!idal_check(j.e)) throw Error("gluing map does not satisfy the idal law");
  auto s = std::make_shared<TwoChartScheme>();
  s->name = name;
  s->chart1 = j.ring();
  s->chart2 = j.ring();
  s->overlap = SelfGlueOverlap{j};
  return s;
}

SchemePtr projective_line(Field field) {
  auto a1 = PolyRing::make(field, {"t"}), a2 = PolyRing::make(field, {"s"});
  return affine_scheme("P1", a1, "t", "u", a2, "s", "v", {"u"}, {"v"});
}

SchemePtr double_origin(std::size_t n, Field field) {
  if (n == 0 || n > 3) throw Error("double origin supports dimensions 1 to 3");
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(n);
  auto a = PolyRing::make(field, names);
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(a->var(i));
  return self_glue_scheme(n == 1 ? "double-origin-line" : n == 2 ? "double-origin-plane" : "double-origin-space",
                          idal_from_ideal(gens, a));
}

// ---------------------------------------------------------------- level maps

ModuleMap idal_action(const Idal& j, std::size_t level, const PresentedModule& m) {
  ModuleMap f = tensor_map(idal_transition(j, level, 0), identity_map(m));
  f.target = m;
  return f;
}

ModuleMap raise_level(const Idal& j, const ModuleMap& f, std::size_t k, std::size_t to, const PresentedModule& m) {
  if (to == k) return f;
  ModuleMap t = tensor_map(idal_transition(j, to, k), identity_map(m));
  return compose(f, t);
}

std::optional<std::size_t> deligne_equal(const Idal& j, const PresentedModule& m, const ModuleMap& f, std::size_t kf,
                                         const ModuleMap& g, std::size_t kg, std::size_t n_max) {
  std::size_t start = std::max(kf, kg);
  for (std::size_t l = start; l <= std::max(start, n_max); ++l)
    if (maps_equal(raise_level(j, f, kf, l, m), raise_level(j, g, kg, l, m))) return l;
  return std::nullopt;
}

// ---------------------------------------------------------------- glued modules

PresentedModule restrict1(const GluedModule& g) { return base_change(g.scheme->restrict1(), g.m1); }

PresentedModule restrict2(const GluedModule& g) { return base_change(g.scheme->restrict2(), g.m2); }

GluedModule glue(const SchemePtr& scheme, const PresentedModule& m1, const PresentedModule& m2,
                 const std::vector<Column>& tau, const std::optional<std::vector<Column>>& tau_inv, std::size_t level,
                 std::size_t inv_level, std::size_t n_max) {
  if (!(m1.ring() == scheme->chart1 || m1.ring()->same_as(*scheme->chart1)) ||
      !(m2.ring() == scheme->chart2 || m2.ring()->same_as(*scheme->chart2)))
    throw Error("chart ring mismatch");
  GluedModule out{scheme, m1, m2, {}, {}, level, inv_level};
  if (scheme->affine()) {
    out.level = out.inv_level = 0;
    auto r1 = restrict1(out), r2 = restrict2(out);
    out.tau = ModuleMap{r2, r1, tau};
    if (!well_defined(out.tau)) throw Error("tau not well-defined");
    if (tau_inv) {
      out.tau_inv = ModuleMap{r1, r2, *tau_inv};
      if (!well_defined(out.tau_inv)) throw Error("tau not well-defined");
      if (!maps_equal(compose(out.tau, out.tau_inv), identity_map(r1)) ||
          !maps_equal(compose(out.tau_inv, out.tau), identity_map(r2)))
        throw Error("tau not invertible");
    } else {
      auto inv = inverse(out.tau);
      if (!inv) throw Error("tau not invertible");
      out.tau_inv = *inv;
    }
    return out;
  }
  const Idal& j = scheme->self().j;
  if (!tau_inv) throw Error("tau inverse required");
  PresentedModule jl = jpow(j, level), jk = jpow(j, inv_level);
  out.tau = ModuleMap{tensor(jl, m2), m1, tau};
  out.tau_inv = ModuleMap{tensor(jk, m1), m2, *tau_inv};
  if (!well_defined(out.tau) || !well_defined(out.tau_inv)) throw Error("tau not well-defined");
  std::size_t total = level + inv_level;
  ModuleMap a = compose(out.tau, tensor_map(identity_map(jl), out.tau_inv));
  ModuleMap b = compose(out.tau_inv, tensor_map(identity_map(jk), out.tau));
  if (!deligne_equal(j, m1, a, total, idal_action(j, total, m1), total, n_max) ||
      !deligne_equal(j, m2, b, total, idal_action(j, total, m2), total, n_max))
    throw Error("tau not invertible");
  return out;
}

GluedModule structure_sheaf(const SchemePtr& scheme) {
  auto o1 = unit_module(scheme->chart1), o2 = unit_module(scheme->chart2);
  if (scheme->affine()) {
    auto one = scheme->aff().o1.ring->one();
    return glue(scheme, o1, o2, {{one}}, std::vector<Column>{{one}});
  }
  auto one = scheme->chart1->one();
  return glue(scheme, o1, o2, {{one}}, std::vector<Column>{{one}});
}

GluedModule p1_standard(const SchemePtr& p1, long n) {
  const auto& o1 = *p1->aff().o1.ring;
  Poly t = o1.var(1), u = o1.var(0);
  unsigned k = static_cast<unsigned>(n < 0 ? -n : n);
  Poly fwd = o1.pow(n >= 0 ? t : u, k), back = o1.pow(n >= 0 ? u : t, k);
  return glue(p1, unit_module(p1->chart1), unit_module(p1->chart2), {{fwd}}, std::vector<Column>{{back}});
}

GluedModule p1_standard(long n) {
  static const SchemePtr p1 = projective_line();
  return p1_standard(p1, n);
}

bool is_glued_morphism(const GluedMorphism& h, std::size_t n_max) {
  require_same_scheme(h.source, h.target);
  if (!well_defined(h.g1) || !well_defined(h.g2)) return false;
  const auto& s = *h.source.scheme;
  if (s.affine()) {
    ModuleMap b1 = base_change_map(s.restrict1(), h.g1), b2 = base_change_map(s.restrict2(), h.g2);
    b1.target = h.target.tau.target;
    return maps_equal(compose(h.target.tau, b2), compose(b1, h.source.tau));
  }
  const Idal& j = s.self().j;
  ModuleMap lhs = compose(h.target.tau, tensor_map(identity_map(jpow(j, h.target.level)), h.g2));
  ModuleMap rhs = compose(h.g1, h.source.tau);
  return deligne_equal(j, h.source.m2, lhs, h.target.level, rhs, h.source.level, n_max).has_value();
}

bool is_glued_iso(const GluedMorphism& h, std::size_t n_max) {
  return is_glued_morphism(h, n_max) && is_iso(h.g1) && is_iso(h.g2);
}

// ---------------------------------------------------------------- sections

SectionsResult global_sections(const GluedModule& g, long degree_bound, std::size_t n_max) {
  SectionsResult out;
  out.degree_bound = degree_bound;
  if (g.scheme->affine()) {
    const auto& s = *g.scheme;
    RingHom h1 = s.restrict1(), h2 = s.restrict2();
    PresentedModule r1 = restrict1(g);
    std::vector<Column> images;
    auto collect = [&](const PresentedModule& m, const RingHom& h, bool through_tau) {
      const PolyRing& r = *m.ring();
      for (std::uint32_t pos = 0; pos < m.gens(); ++pos)
        for (const auto& mono : monomials_up_to(r.nvars(), degree_bound)) {
          if (!m.gb().is_standard(pos, mono)) continue;
          Column c(m.gens());
          c[pos] = r.term(mono, Coeff(1));
          Column x = map_entries(h, c);
          if (through_tau) x = apply_map(g.tau, x);
          images.push_back(r1.reduce(x));
        }
    };
    collect(g.m1, h1, false);
    collect(g.m2, h2, true);
    std::map<std::pair<std::uint32_t, std::array<std::uint16_t, kMaxVars>>, std::size_t> coord;
    for (const auto& c : images)
      for (std::uint32_t pos = 0; pos < c.size(); ++pos)
        for (const auto& t : c[pos].terms) coord.emplace(std::make_pair(pos, t.mono.exp), coord.size());
    std::vector<std::vector<Coeff>> rows;
    for (const auto& c : images) {
      std::vector<Coeff> row(coord.size(), Coeff(0));
      for (std::uint32_t pos = 0; pos < c.size(); ++pos)
        for (const auto& t : c[pos].terms) row[coord.at({pos, t.mono.exp})] = t.coeff;
      rows.push_back(std::move(row));
    }
    std::size_t n = rows.size();
    out.total = n - field_rank(s.chart1->field(), std::move(rows));
    return out;
  }

  const Idal& j = glue_idal(g);
  auto d = direct_sum(g.m1, g.m2);
  auto incls = std::make_shared<std::map<std::size_t, ModuleMap>>();
  Chain chain;
  chain.stage = [&g, &j, d, incls](std::size_t n) {
    std::size_t l = n + g.level;
    Idal jl = idal_tensor_power(j, l);
    auto can = canonical_to_hom(jl, g.m1);
    ModuleMap t = idal_transition(j, l, g.level);
    std::size_t g2 = g.m2.gens(), gk = t.target.gens();
    ModuleMap c2{g.m2, can.hom.module(), {}};
    for (std::size_t b = 0; b < g2; ++b) {
      ModuleMap phi{jl.carrier, g.m1, {}};
      for (std::size_t q = 0; q < jl.carrier.gens(); ++q) {
        Column v(gk * g2);
        for (std::size_t a = 0; a < gk; ++a) v[a * g2 + b] = t.matrix[q][a];
        phi.matrix.push_back(apply_map(g.tau, v));
      }
      c2.matrix.push_back(can.hom.element_of(phi));
    }
    auto pb = pullback(can.map, c2);
    ModuleMap incl = map_column(pb.p1, pb.p2);
    incl.target = d.module;
    (*incls)[n] = incl;
    return pb.module;
  };
  chain.transition = [incls](std::size_t n, const PresentedModule& a, const PresentedModule& b) {
    auto h = factor_through(incls->at(n), incls->at(n + 1));
    if (!h) throw Error("sections chain is not increasing");
    h->source = a;
    h->target = b;
    return *h;
  };
  auto res = chain_colimit(chain, n_max);
  if (!res.stabilized_at) throw Error("sections chain did not stabilize within n_max");
  out.stabilized_at = res.stabilized_at;
  auto simple = simplify(res.value);
  out.module = simple.module;
  if (simple.module.grading()) {
    for (long deg = -degree_bound; deg <= degree_bound; ++deg) {
      std::size_t dim = graded_dim(simple.module, deg);
      out.per_degree.emplace_back(deg, dim);
      out.total += dim;
    }
  }
  return out;
}

// ---------------------------------------------------------------- tensor and Hom

GluedModule direct_sum_glued(const GluedModule& a, const GluedModule& b, std::size_t n_max) {
  require_same_scheme(a, b);
  auto m1 = direct_sum(a.m1, b.m1).module, m2 = direct_sum(a.m2, b.m2).module;
  if (a.scheme->affine())
    return glue(a.scheme, m1, m2, map_direct_sum(a.tau, b.tau).matrix, map_direct_sum(a.tau_inv, b.tau_inv).matrix);
  const Idal& j = glue_idal(a);
  std::size_t l = std::max(a.level, b.level), k = std::max(a.inv_level, b.inv_level);
  auto tau = sum_level_map(j, a.tau, a.level, a.m2, b.tau, b.level, b.m2, l);
  auto inv = sum_level_map(j, a.tau_inv, a.inv_level, a.m1, b.tau_inv, b.inv_level, b.m1, k);
  return glue(a.scheme, m1, m2, tau, inv, l, k, n_max);
}

GluedModule tensor_glued(const GluedModule& g, const GluedModule& h, std::size_t n_max) {
  require_same_scheme(g, h);
  auto m1 = tensor(g.m1, h.m1), m2 = tensor(g.m2, h.m2);
  if (g.scheme->affine())
    return glue(g.scheme, m1, m2, tensor_map(g.tau, h.tau).matrix, tensor_map(g.tau_inv, h.tau_inv).matrix);
  const Idal& j = glue_idal(g);
  const PolyRing& r = *g.scheme->chart1;
  auto tau = tensor_level_map(r, g.tau, jpow(j, g.level).gens(), g.m2.gens(), h.tau, jpow(j, h.level).gens(), h.m2.gens());
  auto inv = tensor_level_map(r, g.tau_inv, jpow(j, g.inv_level).gens(), g.m1.gens(), h.tau_inv,
                              jpow(j, h.inv_level).gens(), h.m1.gens());
  return glue(g.scheme, m1, m2, tau, inv, g.level + h.level, g.inv_level + h.inv_level, n_max);
}

GluedModule tensor_power_glued(const GluedModule& g, std::size_t n, std::size_t n_max) {
  if (n == 0) return structure_sheaf(g.scheme);
  GluedModule acc = g;
  for (std::size_t k = 1; k < n; ++k) acc = tensor_glued(acc, g, n_max);
  return acc;
}

GluedModule hom_glued(const GluedModule& g, const GluedModule& h, std::size_t n_max) {
  require_same_scheme(g, h);
  HomModule h1(g.m1, h.m1), h2(g.m2, h.m2);
  std::vector<Column> tau, inv;
  if (g.scheme->affine()) {
    RingHom r1 = g.scheme->restrict1(), r2 = g.scheme->restrict2();
    Lifter l1 = base_changed_hom_lifter(h1, r1), l2 = base_changed_hom_lifter(h2, r2);
    for (std::size_t k = 0; k < h2.module().gens(); ++k) {
      ModuleMap phi = base_change_map(r2, h2.generator(k));
      auto c = l1.lift(flatten(compose(h.tau, compose(phi, g.tau_inv))));
      if (!c) throw Error("induced transition does not land in the Hom module");
      tau.push_back(*c);
    }
    for (std::size_t k = 0; k < h1.module().gens(); ++k) {
      ModuleMap psi = base_change_map(r1, h1.generator(k));
      auto c = l2.lift(flatten(compose(h.tau_inv, compose(psi, g.tau))));
      if (!c) throw Error("induced transition does not land in the Hom module");
      inv.push_back(*c);
    }
    return glue(g.scheme, h1.module(), h2.module(), tau, inv);
  }
  const Idal& j = glue_idal(g);
  // tau : J^{a'+b} (x) Hom(m2, n2) -> Hom(m1, n1), phi |-> tau_h (J^b (x) phi) tau_g^-1
  auto conj = [&](const ModuleMap& inner_tau, std::size_t gi, const PresentedModule& src, const ModuleMap& outer_tau,
                  std::size_t go, const PresentedModule& mid_tgt, const HomModule& from, const HomModule& to) {
    std::vector<Column> out;
    std::size_t gm = src.gens(), gmid = mid_tgt.gens();
    for (std::size_t p = 0; p < gi; ++p)
      for (std::size_t q = 0; q < go; ++q)
        for (std::size_t k = 0; k < from.module().gens(); ++k) {
          ModuleMap phi = from.generator(k);
          ModuleMap f{to.source(), to.target(), {}};
          for (std::size_t x = 0; x < gm; ++x) {
            Column y = apply_map(phi, inner_tau.matrix[p * gm + x]);
            Column w(go * gmid);
            for (std::size_t c = 0; c < gmid; ++c) w[q * gmid + c] = y[c];
            f.matrix.push_back(apply_map(outer_tau, w));
          }
          out.push_back(to.element_of(f));
        }
    return out;
  };
  tau = conj(g.tau_inv, jpow(j, g.inv_level).gens(), g.m1, h.tau, jpow(j, h.level).gens(), h.m2, h2, h1);
  inv = conj(g.tau, jpow(j, g.level).gens(), g.m2, h.tau_inv, jpow(j, h.inv_level).gens(), h.m1, h1, h2);
  return glue(g.scheme, h1.module(), h2.module(), tau, inv, g.inv_level + h.level, g.level + h.inv_level, n_max);
}

// ---------------------------------------------------------------- invertibility

bool chart_invertible(const PresentedModule& m) { return is_iso(evaluation(m)); }

InvertibleReport invertible_check(const GluedModule& g, std::size_t n_max) {
  InvertibleReport out;
  out.chart1 = chart_invertible(g.m1);
  out.chart2 = chart_invertible(g.m2);
  if (!out.chart1 || !out.chart2) return out;
  auto o = structure_sheaf(g.scheme);
  auto dual = hom_glued(g, o, n_max);
  auto t = tensor_glued(dual, g, n_max);
  ModuleMap ev1 = evaluation(g.m1), ev2 = evaluation(g.m2);
  ev1.source = t.m1;
  ev1.target = o.m1;
  ev2.source = t.m2;
  ev2.target = o.m2;
  out.inverse = dual;
  out.inverse_verified = is_glued_iso(GluedMorphism{t, o, ev1, ev2}, n_max);
  return out;
}

bool dualizable_check(const GluedModule& g, const GluedModule& dual, const GluedMorphism& unit,
                      const GluedMorphism& counit, std::size_t n_max) {
  require_same_scheme(g, dual);
  auto triangles = [](const PresentedModule& m, const PresentedModule& n, const ModuleMap& eta, const ModuleMap& eps) {
    if (eta.matrix.size() != 1 || eta.matrix[0].size() != m.gens() * n.gens()) return false;
    if (eps.matrix.size() != n.gens() * m.gens()) return false;
    ModuleMap a = tensor_map(eta, identity_map(m));
    a.source = m;
    ModuleMap b = tensor_map(identity_map(m), eps);
    b.target = m;
    ModuleMap c = tensor_map(identity_map(n), eta);
    c.source = n;
    ModuleMap d = tensor_map(eps, identity_map(n));
    d.target = n;
    return maps_equal(compose(b, a), identity_map(m)) && maps_equal(compose(d, c), identity_map(n));
  };
  return triangles(g.m1, dual.m1, unit.g1, counit.g1) && triangles(g.m2, dual.m2, unit.g2, counit.g2) &&
         is_glued_morphism(unit, n_max) && is_glued_morphism(counit, n_max);
}

bool chart_symtrivial(const PresentedModule& m) { return maps_equal(swap_map(m, m), identity_map(tensor(m, m))); }

bool symtrivial_check(const GluedModule& g) { return chart_symtrivial(g.m1) && chart_symtrivial(g.m2); }

// ---------------------------------------------------------------- round trip

bool GlueRoundTrip::holds() const {
  return !stage_iso.empty() && std::all_of(stage_iso.begin(), stage_iso.end(), [](bool b) { return b; }) &&
         regluing.value_or(true);
}

GlueRoundTrip roundtrip_check(const Idal& i, const Idal& j, const PresentedModule& m, std::size_t n_max,
                              long degree_bound) {
  if (!cover_check(i, j)) throw Error("cover check fails");
  GlueRoundTrip out;
  Idal ij = idal_product(i, j);
  auto ri = reflect(i, m, n_max), rj = reflect(j, m, n_max), rij = reflect(ij, m, n_max);
  std::size_t stages = static_cast<std::size_t>(std::max<long>(degree_bound, 1));
  if (ri.chain.stabilized_at && rj.chain.stabilized_at && rij.chain.stabilized_at) {
    out.exact = true;
    stages = std::max({*ri.chain.stabilized_at, *rj.chain.stabilized_at, *rij.chain.stabilized_at}) + 1;
  }
  auto principal = [](const Idal& x) { return x.carrier.gens() == 1 && x.carrier.relations().empty(); };
  for (std::size_t n = 1; n <= stages; ++n) {
    Idal in = idal_tensor_power(i, n), jn = idal_tensor_power(j, n);
    auto ci = canonical_to_hom(in, m), cj = canonical_to_hom(jn, m);
    HomModule hij(tensor(in.carrier, jn.carrier), m);
    ModuleMap a = tensor_map(identity_map(in.carrier), jn.e);
    a.target = in.carrier;
    ModuleMap b = tensor_map(in.e, identity_map(jn.carrier));
    b.target = jn.carrier;
    auto pb = pullback(precompose(ci.hom, hij, a), precompose(cj.hom, hij, b));
    auto h = factor_through(map_column(ci.map, cj.map), map_column(pb.p1, pb.p2));
    bool iso = false;
    if (h) {
      h->source = m;
      h->target = pb.module;
      iso = is_iso(*h);
    }
    out.stage_iso.push_back(iso);
    if (n == stages && principal(i) && principal(j)) {
      auto li = localize_ring(m.ring(), i.e.matrix[0][0]), lj = localize_ring(m.ring(), j.e.matrix[0][0]);
      out.regluing = is_iso(base_change_map(li.from_base, pb.p1)) && is_iso(base_change_map(lj.from_base, pb.p2));
    }
  }
  return out;
}

// ---------------------------------------------------------------- idal generation

ChartIdal chart_idal(const SchemePtr& scheme, int chart) {
  if (chart != 1 && chart != 2) throw Error("chart must be 1 or 2");
  auto o = structure_sheaf(scheme);
  auto u1 = unit_module(scheme->chart1), u2 = unit_module(scheme->chart2);
  if (scheme->affine()) {
    const auto& a = scheme->aff();
    const PolyRing& r1 = *scheme->chart1;
    const PolyRing& r2 = *scheme->chart2;
    if (chart == 1) {
      Poly tau = scheme->restrict2().apply(a.f2);
      auto c = glue(scheme, u1, u2, {{tau}}, std::vector<Column>{{a.to1.images[0]}});
      return {c, GluedMorphism{c, o, ModuleMap{u1, u1, {{r1.one()}}}, ModuleMap{u2, u2, {{a.f2}}}}};
    }
    Poly f1 = scheme->restrict1().apply(a.f1);
    auto c = glue(scheme, u1, u2, {{a.o1.inverse}}, std::vector<Column>{{f1}});
    return {c, GluedMorphism{c, o, ModuleMap{u1, u1, {{a.f1}}}, ModuleMap{u2, u2, {{r2.one()}}}}};
  }
  const Idal& j = scheme->self().j;
  const PolyRing& r = *scheme->chart1;
  std::vector<Column> ident;
  for (std::size_t q = 0; q < j.carrier.gens(); ++q) ident.push_back(unit_column(r, j.carrier.gens(), q));
  ModuleMap one{u1, u1, {{r.one()}}};
  ModuleMap e = j.e;
  e.target = u1;
  if (chart == 1) {
    auto c = glue(scheme, u1, j.carrier, j.e.matrix, ident, 0, 1);
    return {c, GluedMorphism{c, o, one, e}};
  }
  auto c = glue(scheme, j.carrier, u2, ident, j.e.matrix, 1, 0);
  return {c, GluedMorphism{c, o, e, one}};
}

IdalGeneration idal_generation(const GluedModule& g, std::size_t n_max) {
  const auto& scheme = g.scheme;
  ChartIdal c1 = chart_idal(scheme, 1), c2 = chart_idal(scheme, 2);
  IdalGeneration out;
  std::vector<GluedModule> pieces;
  std::vector<Column> img1, img2;
  auto covered = [](const PresentedModule& m, const std::vector<Column>& imgs, std::size_t gen) {
    Lifter l(*m.ring(), m.gens(), imgs, m.relations());
    return l.lift(unit_column(*m.ring(), m.gens(), gen)).has_value();
  };
  // extension of a chart generator to a map from a power of that chart's idal
  auto extend = [&](int chart, std::size_t gen) -> std::optional<std::pair<std::size_t, GluedMorphism>> {
    const ChartIdal& ci = chart == 1 ? c1 : c2;
    const PresentedModule& home = chart == 1 ? g.m1 : g.m2;
    for (std::size_t n = 0; n <= n_max; ++n) {
      GluedModule pw = tensor_power_glued(ci.carrier, n, n_max);
      const PresentedModule& own = chart == 1 ? pw.m1 : pw.m2;
      const PresentedModule& other = chart == 1 ? pw.m2 : pw.m1;
      if (own.gens() != 1) throw Error("chart idal power is not cyclic on its chart");
      ModuleMap here{own, home, {unit_column(*home.ring(), home.gens(), gen)}};
      ModuleMap there{other, chart == 1 ? g.m2 : g.m1, {}};
      if (scheme->affine()) {
        const auto& a = scheme->aff();
        Column x;
        if (chart == 1) {
          x = apply_map(g.tau_inv, map_entries(scheme->restrict1(), here.matrix[0]));
          x = column_scale(*a.o1.ring, x, pw.tau.matrix[0][0]);
          x = map_entries(a.to2, x);
        } else {
          x = apply_map(g.tau, map_entries(scheme->restrict2(), here.matrix[0]));
          x = column_scale(*a.o1.ring, x, pw.tau_inv.matrix[0][0]);
        }
        const PolyRing& base = chart == 1 ? *scheme->chart2 : *scheme->chart1;
        Column c;
        bool ok = true;
        for (const auto& p : x) {
          auto q = strip_inverse(p, base);
          if (!q) {
            ok = false;
            break;
          }
          c.push_back(*q);
        }
        if (!ok) continue;
        there.matrix.push_back(std::move(c));
      } else {
        const Idal& j = scheme->self().j;
        const ModuleMap& t = chart == 1 ? g.tau_inv : g.tau;
        std::size_t k = chart == 1 ? g.inv_level : g.level;
        if (n < k) continue;
        ModuleMap raised = raise_level(j, t, k, n, home);
        std::size_t gh = home.gens();
        for (std::size_t q = 0; q < other.gens(); ++q) {
          Column v(other.gens() * gh);
          v[q * gh + gen] = home.ring()->one();
          there.matrix.push_back(apply_map(raised, v));
        }
      }
      GluedMorphism h = chart == 1 ? GluedMorphism{pw, g, here, there} : GluedMorphism{pw, g, there, here};
      if (is_glued_morphism(h, n_max)) return std::make_pair(n, h);
    }
    return std::nullopt;
  };
  for (int chart : {1, 2}) {
    const PresentedModule& home = chart == 1 ? g.m1 : g.m2;
    for (std::size_t gen = 0; gen < home.gens(); ++gen) {
      if (covered(home, chart == 1 ? img1 : img2, gen)) continue;
      auto ext = extend(chart, gen);
      if (!ext) throw Error("n_max insufficient for extension on chart " + std::to_string(chart));
      out.terms.push_back({chart, gen, ext->first});
      const GluedMorphism& h = ext->second;
      img1.insert(img1.end(), h.g1.matrix.begin(), h.g1.matrix.end());
      img2.insert(img2.end(), h.g2.matrix.begin(), h.g2.matrix.end());
      pieces.push_back(h.source);
    }
  }
  GluedModule source;
  if (pieces.empty()) {
    source = glue(scheme, free_module(scheme->chart1, 0), free_module(scheme->chart2, 0), {}, std::vector<Column>{});
  } else {
    source = pieces[0];
    for (std::size_t k = 1; k < pieces.size(); ++k) source = direct_sum_glued(source, pieces[k], n_max);
  }
  out.epi = GluedMorphism{source, g, ModuleMap{source.m1, g.m1, img1}, ModuleMap{source.m2, g.m2, img2}};
  if (!is_glued_morphism(out.epi, n_max) || !is_surjective(out.epi.g1) || !is_surjective(out.epi.g2))
    throw Error("generation map failed verification");
  return out;
}

// ---------------------------------------------------------------- classification data

bool DatumReport::holds() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.second; });
}

namespace {

bool maps_to_unit(const ModuleMap& f, const PresentedModule& src) {
  return f.matrix.size() == src.gens() && f.target.gens() == 1 && f.target.relations().empty() &&
         well_defined(ModuleMap{src, f.target, f.matrix});
}

}  // namespace

DatumReport projline_datum_check(const PresentedModule& l, const ModuleMap& s1, const ModuleMap& s2) {
  DatumReport r;
  bool maps = maps_to_unit(s1, l) && maps_to_unit(s2, l);
  r.clauses.emplace_back("line object", chart_invertible(l) && chart_symtrivial(l));
  r.clauses.emplace_back("maps well-defined", maps);
  r.clauses.emplace_back("cover", maps && cover_check(Idal{l, ModuleMap{l, s1.target, s1.matrix}},
                                                      Idal{l, ModuleMap{l, s2.target, s2.matrix}}));
  return r;
}

DatumReport doubleorigin_datum_check(const PresentedModule& l, const PresentedModule& lstar, const ModuleMap& s,
                                     const ModuleMap& t, const ModuleMap& pairing) {
  DatumReport r;
  bool maps = maps_to_unit(s, l) && maps_to_unit(t, lstar);
  r.clauses.emplace_back("line object", chart_invertible(l) && chart_symtrivial(l));
  ModuleMap p{tensor(l, lstar), unit_module(l.ring()), pairing.matrix};
  r.clauses.emplace_back("dual", p.matrix.size() == p.source.gens() && well_defined(p) && is_iso(p));
  r.clauses.emplace_back("maps well-defined", maps);
  r.clauses.emplace_back("cover", maps && cover_check(Idal{l, ModuleMap{l, s.target, s.matrix}},
                                                      Idal{lstar, ModuleMap{lstar, t.target, t.matrix}}));
  return r;
}

DatumReport doubleorigin2_datum_check(const Idal& j1, const Idal& j2, const ModuleMap& p) {
  DatumReport r;
  r.clauses.emplace_back("cover", cover_check(j1, j2));
  Idal prod = idal_product(j1, j2);
  const RingPtr& ring = prod.ring();
  auto o2 = free_module(ring, 2);
  ModuleMap pm{o2, prod.carrier, p.matrix};
  bool defined = pm.matrix.size() == 2 && std::all_of(pm.matrix.begin(), pm.matrix.end(), [&](const Column& c) {
                   return c.size() == prod.carrier.gens();
                 });
  r.clauses.emplace_back("p well-defined", defined);
  if (!defined) {
    r.clauses.emplace_back("p surjective", false);
    r.clauses.emplace_back("exact at O^2", false);
    return r;
  }
  r.clauses.emplace_back("p surjective", is_surjective(pm));
  ModuleMap xy = compose(prod.e, pm);
  const Poly& x = xy.matrix[0][0];
  const Poly& y = xy.matrix[1][0];
  Column syz{y, ring->neg(x)};
  bool exact = prod.carrier.is_zero_element(apply_map(pm, syz));
  if (exact) {
    Lifter l(*ring, 2, {syz}, {});
    for (const auto& c : kernel(pm).incl.matrix)
      if (!l.lift(c)) {
        exact = false;
        break;
      }
  }
  r.clauses.emplace_back("exact at O^2", exact);
  return r;
}

DatumReport projline_datum_check(const LineBundleDatum& d, std::size_t n_max) {
  DatumReport r;
  r.clauses.emplace_back("line object", invertible_check(d.l, n_max).holds() && symtrivial_check(d.l));
  r.clauses.emplace_back("maps glued", is_glued_morphism(d.s1, n_max) && is_glued_morphism(d.s2, n_max));
  auto chart_cover = [](const PresentedModule& l, const ModuleMap& a, const ModuleMap& b) {
    return maps_to_unit(a, l) && maps_to_unit(b, l) &&
           cover_check(Idal{l, ModuleMap{l, a.target, a.matrix}}, Idal{l, ModuleMap{l, b.target, b.matrix}});
  };
  r.clauses.emplace_back("cover on chart 1", chart_cover(d.l.m1, d.s1.g1, d.s2.g1));
  r.clauses.emplace_back("cover on chart 2", chart_cover(d.l.m2, d.s1.g2, d.s2.g2));
  return r;
}

DoubleOrigin2Datum doubleorigin2_canonical(const RingPtr& ring) {
  if (ring->nvars() < 2) throw Error("the double-origin plane datum needs two variables");
  Idal j1 = identity_idal(ring);
  Idal j2 = idal_from_ideal({ring->var(0), ring->var(1)}, ring);
  Idal prod = idal_product(j1, j2);
  ModuleMap p{free_module(ring, 2), prod.carrier, {}};
  for (std::size_t i = 0; i < 2; ++i) p.matrix.push_back(unit_column(*ring, prod.carrier.gens(), i));
  return {j1, j2, p};
}

}  // namespace idalkit
