#include "idalkit/idal.hpp"

#include <numeric>

namespace idalkit {

std::vector<Poly> Idal::image_generators() const {
  std::vector<Poly> out;
  for (const auto& c : e.matrix)
    if (!c[0].is_zero()) out.push_back(c[0]);
  return out;
}

bool is_idal_morphism(const IdalMorphism& m) {
  return well_defined(m.f) && maps_equal(compose(m.target.e, m.f), m.source.e);
}

PresentedModule unit_module(const RingPtr& ring) { return free_module(ring, 1, Grading{0}); }

namespace {

void require_unit_target(const ModuleMap& e) {
  if (e.target.gens() != 1 || !e.target.relations().empty()) throw Error("idal map must target the rank-1 free module");
}

// e (x) I and I (x) e as maps I (x) I -> I
std::pair<ModuleMap, ModuleMap> law_sides(const ModuleMap& e) {
  const PresentedModule& i = e.source;
  ModuleMap left = tensor_map(e, identity_map(i));
  ModuleMap right = tensor_map(identity_map(i), e);
  left.target = i;
  right.target = i;
  return {left, right};
}

}  // namespace

IdalCheck idal_check_detail(const ModuleMap& e) {
  require_unit_target(e);
  auto [left, right] = law_sides(e);
  IdalCheck res;
  std::size_t g = e.source.gens();
  const PolyRing& r = *e.source.ring();
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      std::size_t k = i * g + j;
      if (!e.source.is_zero_element(column_sub(r, left.matrix[k], right.matrix[k]))) {
        res.holds = false;
        res.failing_pairs.emplace_back(i + 1, j + 1);
      }
    }
  return res;
}

bool idal_check(const ModuleMap& e) { return idal_check_detail(e).holds; }

Reflection idal_reflect(const ModuleMap& f) {
  require_unit_target(f);
  auto [left, right] = law_sides(f);
  auto c = cokernel(map_sub(left, right));
  Idal idal{c.module, ModuleMap{c.module, f.target, f.matrix}};
  return {idal, c.proj};
}

Idal identity_idal(const RingPtr& ring) {
  auto o = unit_module(ring);
  return {o, identity_map(o)};
}

Idal principal_idal(const RingPtr& ring, const Poly& f) {
  auto o = free_module(ring, 1, ring->homogeneous_degree(f) ? std::optional<Grading>(Grading{*ring->homogeneous_degree(f)})
                                                            : std::nullopt);
  return {o, ModuleMap{o, unit_module(ring), {{f}}}};
}

Idal make_idal(const ModuleMap& e) {
  if (!well_defined(e)) throw Error("idal map is not well-defined");
  auto chk = idal_check_detail(e);
  if (!chk.holds) throw Error("map does not satisfy the idal law");
  return {e.source, e};
}

Idal idal_product(const Idal& a, const Idal& b) {
  if (!same_ring(a.carrier, b.carrier)) throw Error("ring mismatch");
  ModuleMap t = tensor_map(a.e, b.e);
  t.target = unit_module(a.ring());
  return {t.source, t};
}

Idal idal_tensor_power(const Idal& e, std::size_t n) {
  if (n == 0) return identity_idal(e.ring());
  Idal acc = e;
  for (std::size_t k = 1; k < n; ++k) acc = idal_product(acc, e);
  return acc;
}

ModuleMap idal_transition(const Idal& e, std::size_t n, std::size_t m, std::optional<std::vector<std::size_t>> positions) {
  if (n < m) throw Error("idal transition requires n >= m");
  Idal src = idal_tensor_power(e, n), tgt = idal_tensor_power(e, m);
  if (n == m) return identity_map(src.carrier);
  std::vector<bool> applied(n, false);
  if (positions) {
    if (positions->size() != n - m) throw Error("wrong number of transition positions");
    for (auto p : *positions) {
      if (p >= n || applied[p]) throw Error("bad transition position");
      applied[p] = true;
    }
  } else {
    for (std::size_t p = m; p < n; ++p) applied[p] = true;
  }
  const PolyRing& r = *e.ring();
  std::size_t g = e.carrier.gens();
  ModuleMap t{src.carrier, tgt.carrier, {}};
  std::size_t total = src.carrier.gens();
  std::vector<std::size_t> digits(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t p = n; p-- > 0;) {
      digits[p] = rest % g;
      rest /= g;
    }
    Poly coef = r.one();
    std::size_t out = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (applied[p])
        coef = r.mul(coef, e.e.matrix[digits[p]][0]);
      else
        out = out * g + digits[p];
    }
    Column c(tgt.carrier.gens());
    c[out] = coef;
    t.matrix.push_back(std::move(c));
  }
  return t;
}

IdalPower idal_power(const Idal& e, std::size_t n, std::size_t m) {
  return {idal_tensor_power(e, n), idal_transition(e, n, m)};
}

bool cover_check(const Idal& e, const Idal& f) {
  if (!same_ring(e.carrier, f.carrier)) throw Error("ring mismatch");
  std::vector<Poly> gens = e.image_generators();
  for (const auto& p : f.image_generators()) gens.push_back(p);
  if (gens.empty()) return false;
  return e.ring()->ideal_contains_one(gens);
}

bool cover_check_pushout(const Idal& e, const Idal& f) {
  if (!same_ring(e.carrier, f.carrier)) throw Error("ring mismatch");
  ModuleMap eJ = tensor_map(e.e, identity_map(f.carrier));
  ModuleMap If = tensor_map(identity_map(e.carrier), f.e);
  eJ.target = f.carrier;
  If.target = e.carrier;
  auto po = pushout(eJ, If);
  ModuleMap induced = map_row(f.e, e.e);
  induced.source = po.module;
  return well_defined(induced) && is_iso(induced);
}

Idal idal_from_ideal(const std::vector<Poly>& gens, const RingPtr& ring) {
  if (gens.empty()) throw Error("empty generator list");
  std::optional<Grading> grading = Grading{};
  for (const auto& g : gens) {
    auto d = ring->homogeneous_degree(g);
    if (!d) {
      grading.reset();
      break;
    }
    grading->push_back(*d);
  }
  auto a = free_module(ring, gens.size(), grading);
  ModuleMap f{a, unit_module(ring), {}};
  for (const auto& g : gens) f.matrix.push_back({ring->normal_form(g)});
  return idal_reflect(f).idal;
}

std::optional<std::size_t> nilpotency_check(const Idal& e, std::size_t n_max) {
  Idal acc = e;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) acc = idal_product(acc, e);
    if (is_zero_map(acc.e)) return n;
  }
  return std::nullopt;
}

mpz_class free_idal_hom_size(std::size_t n, std::size_t m) {
  if (n < m) return 0;
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), m);
  return r;
}

PresentedModule base_change(const RingHom& h, const PresentedModule& m) {
  std::vector<Column> rels;
  for (const auto& c : m.relations()) {
    Column x;
    for (const auto& p : c) x.push_back(h.apply(p));
    rels.push_back(std::move(x));
  }
  std::optional<Grading> grading = m.grading();
  if (grading)
    for (const auto& c : rels)
      if (!column_homogeneous(*h.target, *grading, c)) {
        grading.reset();
        break;
      }
  return PresentedModule(h.target, m.gens(), rels, grading);
}

ModuleMap base_change_map(const RingHom& h, const ModuleMap& f) {
  ModuleMap g{base_change(h, f.source), base_change(h, f.target), {}};
  for (const auto& c : f.matrix) {
    Column x;
    for (const auto& p : c) x.push_back(h.apply(p));
    g.matrix.push_back(std::move(x));
  }
  return g;
}

Idal idal_base_change(const RingHom& h, const Idal& e) {
  if (!h.well_defined()) throw Error("ill-defined ring homomorphism");
  if (!(h.source == e.ring() || h.source->same_as(*e.ring()))) throw Error("homomorphism source differs from idal ring");
  ModuleMap g = base_change_map(h, e.e);
  g.target = unit_module(h.target);
  return {g.source, g};
}

}  // namespace idalkit
