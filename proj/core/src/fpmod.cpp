#include "idalkit/fpmod.hpp"

#include <algorithm>
#include <map>

namespace idalkit {

// ---------------------------------------------------------------- columns

Column unit_column(const PolyRing& ring, std::size_t rank, std::size_t i) {
  Column c(rank);
  c[i] = ring.one();
  return c;
}

Column zero_column(std::size_t rank) { return Column(rank); }

Column column_add(const PolyRing& ring, const Column& a, const Column& b) {
  Column c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = ring.add(a[i], b[i]);
  return c;
}

Column column_sub(const PolyRing& ring, const Column& a, const Column& b) {
  Column c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = ring.sub(a[i], b[i]);
  return c;
}

Column column_scale(const PolyRing& ring, const Column& a, const Poly& p) {
  Column c(a.size());
  if (p.is_zero()) return c;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = ring.mul(a[i], p);
  return c;
}

bool column_is_zero(const Column& c) {
  return std::all_of(c.begin(), c.end(), [](const Poly& p) { return p.is_zero(); });
}

bool column_homogeneous(const PolyRing& ring, const Grading& ambient, const Column& c, long* degree) {
  std::optional<long> deg;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& t : c[i].terms) {
      long d = ring.wdeg(t.mono) + ambient[i];
      if (deg && *deg != d) return false;
      deg = d;
    }
  if (degree) *degree = deg.value_or(0);
  return true;
}

std::optional<Grading> infer_grading(const PolyRing& ring, const std::optional<Grading>& ambient,
                                     const std::vector<Column>& columns) {
  if (!ambient) return std::nullopt;
  Grading g;
  for (const auto& c : columns) {
    long d = 0;
    if (!column_homogeneous(ring, *ambient, c, &d)) return std::nullopt;
    g.push_back(d);
  }
  return g;
}

// ---------------------------------------------------------------- modules

PresentedModule::PresentedModule(RingPtr ring, std::size_t gens, std::vector<Column> relations,
                                 std::optional<Grading> grading)
    : ring_(std::move(ring)), gens_(gens), grading_(std::move(grading)) {
  if (!ring_) throw Error("module without ring");
  for (auto& c : relations) {
    if (c.size() != gens_) throw Error("relation column length differs from generator count");
    for (auto& p : c) p = ring_->normal_form(p);
    if (!column_is_zero(c)) relations_.push_back(std::move(c));
  }
  if (grading_) {
    if (grading_->size() != gens_) throw Error("grading length differs from generator count");
    for (const auto& c : relations_)
      if (!column_homogeneous(*ring_, *grading_, c)) throw Error("relation column not homogeneous for the grading");
  }
}

const ModuleGB& PresentedModule::gb() const {
  std::call_once(cache_->once, [&] {
    std::vector<Vec> gens;
    for (const auto& c : relations_) gens.push_back(column_to_vec(c));
    cache_->gb = std::make_unique<ModuleGB>(*ring_, gens_, gens);
  });
  return *cache_->gb;
}

Column PresentedModule::reduce(const Column& v) const {
  if (v.size() != gens_) throw Error("element length differs from generator count");
  return vec_to_column(gb().reduce(column_to_vec(v)), gens_);
}

bool PresentedModule::is_zero_element(const Column& v) const {
  if (v.size() != gens_) throw Error("element length differs from generator count");
  return gb().contains(column_to_vec(v));
}

PresentedModule free_module(const RingPtr& ring, std::size_t rank, std::optional<Grading> grading) {
  return PresentedModule(ring, rank, {}, std::move(grading));
}

bool is_zero(const PresentedModule& m) {
  for (std::size_t i = 0; i < m.gens(); ++i)
    if (m.gb().is_standard(static_cast<std::uint32_t>(i), Monomial{})) return false;
  return true;
}

bool same_ring(const PresentedModule& a, const PresentedModule& b) {
  return a.ring() == b.ring() || a.ring()->same_as(*b.ring());
}

// ---------------------------------------------------------------- maps

Column apply_map(const ModuleMap& f, const Column& v) {
  const PolyRing& r = *f.target.ring();
  if (v.size() != f.matrix.size()) throw Error("vector length differs from map source");
  Column out(f.target.gens());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out = column_add(r, out, column_scale(r, f.matrix[i], v[i]));
  return out;
}

bool well_defined(const ModuleMap& f) {
  if (f.matrix.size() != f.source.gens()) return false;
  for (const auto& c : f.matrix)
    if (c.size() != f.target.gens()) return false;
  for (const auto& rel : f.source.relations())
    if (!f.target.is_zero_element(apply_map(f, rel))) return false;
  return true;
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  if (f.matrix.size() != g.matrix.size()) return false;
  const PolyRing& r = *f.target.ring();
  for (std::size_t i = 0; i < f.matrix.size(); ++i)
    if (!f.target.is_zero_element(column_sub(r, f.matrix[i], g.matrix[i]))) return false;
  return true;
}

bool is_zero_map(const ModuleMap& f) {
  for (const auto& c : f.matrix)
    if (!f.target.is_zero_element(c)) return false;
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target.gens() != g.source.gens()) throw Error("maps not composable");
  ModuleMap h{f.source, g.target, {}};
  for (const auto& c : f.matrix) h.matrix.push_back(apply_map(g, c));
  return h;
}

ModuleMap identity_map(const PresentedModule& m) {
  ModuleMap f{m, m, {}};
  for (std::size_t i = 0; i < m.gens(); ++i) f.matrix.push_back(unit_column(*m.ring(), m.gens(), i));
  return f;
}

ModuleMap zero_map(const PresentedModule& s, const PresentedModule& t) {
  return ModuleMap{s, t, std::vector<Column>(s.gens(), zero_column(t.gens()))};
}

ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h{f.source, f.target, {}};
  for (std::size_t i = 0; i < f.matrix.size(); ++i)
    h.matrix.push_back(column_sub(*f.target.ring(), f.matrix[i], g.matrix[i]));
  return h;
}

ModuleMap map_add(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h{f.source, f.target, {}};
  for (std::size_t i = 0; i < f.matrix.size(); ++i)
    h.matrix.push_back(column_add(*f.target.ring(), f.matrix[i], g.matrix[i]));
  return h;
}

ModuleMap map_scale(const ModuleMap& f, const Poly& p) {
  ModuleMap h{f.source, f.target, {}};
  for (const auto& c : f.matrix) h.matrix.push_back(column_scale(*f.target.ring(), c, p));
  return h;
}

// ---------------------------------------------------------------- simplify

Simplified simplify(const PresentedModule& m) {
  const PolyRing& r = *m.ring();
  std::vector<Column> cols = m.relations();
  std::size_t g = m.gens();
  std::vector<std::size_t> alive(g);
  for (std::size_t i = 0; i < g; ++i) alive[i] = i;
  std::vector<Column> to;  // original gen -> current coordinates
  for (std::size_t i = 0; i < g; ++i) to.push_back(unit_column(r, g, i));
  std::optional<Grading> grading = m.grading();

  auto substitute = [&](Column& c, std::size_t i, const Column& sub) {
    if (c[i].is_zero()) return;
    Poly coef = c[i];
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != i && !sub[j].is_zero()) c[j] = r.add(c[j], r.mul(coef, sub[j]));
    c[i] = Poly{};
  };
  auto erase_row = [](Column& c, std::size_t i) { c.erase(c.begin() + static_cast<long>(i)); };

  for (;;) {
    std::size_t best_c = SIZE_MAX, best_i = 0, best_fill = SIZE_MAX;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::size_t fill = 0;
      for (const auto& p : cols[c]) fill += p.is_zero() ? 0 : 1;
      if (fill >= best_fill) continue;
      for (std::size_t i = 0; i < cols[c].size(); ++i)
        if (!cols[c][i].is_zero() && r.is_constant(cols[c][i])) {
          best_c = c;
          best_i = i;
          best_fill = fill;
          break;
        }
    }
    if (best_c == SIZE_MAX) break;
    Column piv = cols[best_c];
    Coeff inv = r.field().neg(r.field().inv(piv[best_i].lead().coeff));
    Column sub(piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j)
      if (j != best_i) sub[j] = r.scale(piv[j], inv);
    cols.erase(cols.begin() + static_cast<long>(best_c));
    for (auto& c : cols) {
      substitute(c, best_i, sub);
      erase_row(c, best_i);
    }
    for (auto& c : to) {
      substitute(c, best_i, sub);
      erase_row(c, best_i);
    }
    alive.erase(alive.begin() + static_cast<long>(best_i));
    if (grading) grading->erase(grading->begin() + static_cast<long>(best_i));
    std::vector<Column> kept;
    for (auto& c : cols)
      if (!column_is_zero(c)) kept.push_back(std::move(c));
    cols = std::move(kept);
  }
  PresentedModule out(m.ring(), alive.size(), cols, grading);
  Simplified s{out, ModuleMap{m, out, to}, ModuleMap{out, m, {}}};
  for (std::size_t k = 0; k < alive.size(); ++k) s.from.matrix.push_back(unit_column(r, g, alive[k]));
  return s;
}

// ---------------------------------------------------------------- kernel / cokernel / image

KernelResult kernel(const ModuleMap& f) {
  const RingPtr& ring = f.source.ring();
  const PolyRing& r = *ring;
  std::vector<Column> p;
  if (f.source.gens() > 0) {
    Lifter l(r, f.target.gens(), f.matrix, f.target.relations());
    for (auto& c : l.syzygies())
      if (!f.source.is_zero_element(c)) p.push_back(std::move(c));
  }
  std::vector<Column> rels;
  if (!p.empty()) rels = Lifter(r, f.source.gens(), p, f.source.relations()).syzygies();
  auto grading = infer_grading(r, f.source.grading(), p);
  if (grading)
    for (const auto& c : rels)
      if (!column_homogeneous(r, *grading, c)) {
        grading.reset();
        break;
      }
  PresentedModule k(ring, p.size(), rels, grading);
  ModuleMap incl{k, f.source, p};
  auto s = simplify(k);
  return {s.module, compose(incl, s.from)};
}

CokernelResult cokernel(const ModuleMap& f) {
  const PolyRing& r = *f.target.ring();
  std::vector<Column> rels;
  for (const auto& c : f.matrix)
    if (!column_is_zero(c)) rels.push_back(c);
  bool graded = f.target.grading().has_value();
  for (const auto& c : rels)
    if (graded && !column_homogeneous(r, *f.target.grading(), c)) graded = false;
  for (const auto& c : f.target.relations()) rels.push_back(c);
  PresentedModule c(f.target.ring(), f.target.gens(), rels, graded ? f.target.grading() : std::nullopt);
  ModuleMap proj{f.target, c, {}};
  for (std::size_t i = 0; i < f.target.gens(); ++i) proj.matrix.push_back(unit_column(r, f.target.gens(), i));
  return {c, proj};
}

ImageResult image(const ModuleMap& f) {
  auto k = kernel(f);
  auto c = cokernel(k.incl);
  ModuleMap incl{c.module, f.target, f.matrix};
  return {c.module, incl, c.proj};
}

// ---------------------------------------------------------------- sums and tensors

DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (!same_ring(a, b)) throw Error("ring mismatch");
  const PolyRing& r = *a.ring();
  std::size_t ga = a.gens(), gb = b.gens(), g = ga + gb;
  std::vector<Column> rels;
  for (const auto& c : a.relations()) {
    Column x(g);
    std::copy(c.begin(), c.end(), x.begin());
    rels.push_back(std::move(x));
  }
  for (const auto& c : b.relations()) {
    Column x(g);
    std::copy(c.begin(), c.end(), x.begin() + static_cast<long>(ga));
    rels.push_back(std::move(x));
  }
  std::optional<Grading> grading;
  if (a.grading() && b.grading()) {
    grading = *a.grading();
    grading->insert(grading->end(), b.grading()->begin(), b.grading()->end());
  }
  PresentedModule s(a.ring(), g, rels, grading);
  DirectSum d{s, {a, s, {}}, {b, s, {}}, {s, a, {}}, {s, b, {}}};
  for (std::size_t i = 0; i < ga; ++i) d.inc1.matrix.push_back(unit_column(r, g, i));
  for (std::size_t j = 0; j < gb; ++j) d.inc2.matrix.push_back(unit_column(r, g, ga + j));
  for (std::size_t i = 0; i < g; ++i) {
    d.proj1.matrix.push_back(i < ga ? unit_column(r, ga, i) : zero_column(ga));
    d.proj2.matrix.push_back(i >= ga ? unit_column(r, gb, i - ga) : zero_column(gb));
  }
  return d;
}

PresentedModule direct_sum_many(const std::vector<PresentedModule>& ms) {
  if (ms.empty()) throw Error("empty direct sum");
  PresentedModule acc = ms[0];
  for (std::size_t k = 1; k < ms.size(); ++k) acc = direct_sum(acc, ms[k]).module;
  return acc;
}

ModuleMap map_direct_sum(const ModuleMap& f, const ModuleMap& g) {
  auto s = direct_sum(f.source, g.source);
  auto t = direct_sum(f.target, g.target);
  ModuleMap h{s.module, t.module, {}};
  for (const auto& c : f.matrix) {
    Column x(t.module.gens());
    std::copy(c.begin(), c.end(), x.begin());
    h.matrix.push_back(std::move(x));
  }
  for (const auto& c : g.matrix) {
    Column x(t.module.gens());
    std::copy(c.begin(), c.end(), x.begin() + static_cast<long>(f.target.gens()));
    h.matrix.push_back(std::move(x));
  }
  return h;
}

ModuleMap map_row(const ModuleMap& f, const ModuleMap& g) {
  auto s = direct_sum(f.source, g.source);
  ModuleMap h{s.module, f.target, f.matrix};
  h.matrix.insert(h.matrix.end(), g.matrix.begin(), g.matrix.end());
  return h;
}

ModuleMap map_column(const ModuleMap& f, const ModuleMap& g) {
  auto t = direct_sum(f.target, g.target);
  ModuleMap h{f.source, t.module, {}};
  for (std::size_t i = 0; i < f.matrix.size(); ++i) {
    Column x = f.matrix[i];
    x.insert(x.end(), g.matrix[i].begin(), g.matrix[i].end());
    h.matrix.push_back(std::move(x));
  }
  return h;
}

PresentedModule tensor(const PresentedModule& m, const PresentedModule& n) {
  if (!same_ring(m, n)) throw Error("ring mismatch");
  std::size_t gm = m.gens(), gn = n.gens(), g = gm * gn;
  std::vector<Column> rels;
  for (const auto& c : m.relations())
    for (std::size_t j = 0; j < gn; ++j) {
      Column x(g);
      for (std::size_t i = 0; i < gm; ++i) x[i * gn + j] = c[i];
      rels.push_back(std::move(x));
    }
  for (std::size_t i = 0; i < gm; ++i)
    for (const auto& c : n.relations()) {
      Column x(g);
      for (std::size_t j = 0; j < gn; ++j) x[i * gn + j] = c[j];
      rels.push_back(std::move(x));
    }
  std::optional<Grading> grading;
  if (m.grading() && n.grading()) {
    grading.emplace();
    for (std::size_t i = 0; i < gm; ++i)
      for (std::size_t j = 0; j < gn; ++j) grading->push_back((*m.grading())[i] + (*n.grading())[j]);
  }
  return PresentedModule(m.ring(), g, rels, grading);
}

ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g) {
  const PolyRing& r = *f.source.ring();
  PresentedModule s = tensor(f.source, g.source), t = tensor(f.target, g.target);
  std::size_t tn = g.target.gens();
  ModuleMap h{s, t, {}};
  for (std::size_t i = 0; i < f.source.gens(); ++i)
    for (std::size_t j = 0; j < g.source.gens(); ++j) {
      Column x(t.gens());
      for (std::size_t k = 0; k < f.target.gens(); ++k) {
        if (f.matrix[i][k].is_zero()) continue;
        for (std::size_t l = 0; l < tn; ++l)
          if (!g.matrix[j][l].is_zero()) x[k * tn + l] = r.mul(f.matrix[i][k], g.matrix[j][l]);
      }
      h.matrix.push_back(std::move(x));
    }
  return h;
}

ModuleMap swap_map(const PresentedModule& m, const PresentedModule& n) {
  const PolyRing& r = *m.ring();
  PresentedModule s = tensor(m, n), t = tensor(n, m);
  ModuleMap h{s, t, {}};
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (std::size_t j = 0; j < n.gens(); ++j) h.matrix.push_back(unit_column(r, t.gens(), j * m.gens() + i));
  return h;
}

// ---------------------------------------------------------------- Hom

HomModule::HomModule(const PresentedModule& m, const PresentedModule& n) : m_(m), n_(n) {
  if (!same_ring(m, n)) throw Error("ring mismatch");
  const PolyRing& r = *m.ring();
  std::size_t gm = m.gens(), gn = n.gens(), sm = m.relations().size();

  std::optional<Grading> amb_grading, tgt_grading;
  if (m.grading() && n.grading()) {
    amb_grading.emplace();
    for (std::size_t i = 0; i < gm; ++i)
      for (std::size_t j = 0; j < gn; ++j) amb_grading->push_back((*n.grading())[j] - (*m.grading())[i]);
    tgt_grading.emplace();
    for (std::size_t k = 0; k < sm; ++k) {
      long c = 0;
      column_homogeneous(r, *m.grading(), m.relations()[k], &c);
      for (std::size_t j = 0; j < gn; ++j) tgt_grading->push_back((*n.grading())[j] - c);
    }
  }
  std::vector<PresentedModule> copies(gm, n);
  ambient_ = gm ? PresentedModule(m.ring(), gm * gn, [&] {
    std::vector<Column> rels;
    for (std::size_t i = 0; i < gm; ++i)
      for (const auto& c : n.relations()) {
        Column x(gm * gn);
        for (std::size_t j = 0; j < gn; ++j) x[i * gn + j] = c[j];
        rels.push_back(std::move(x));
      }
    return rels;
  }(), amb_grading)
             : free_module(m.ring(), 0, Grading{});
  PresentedModule target(m.ring(), sm * gn, [&] {
    std::vector<Column> rels;
    for (std::size_t k = 0; k < sm; ++k)
      for (const auto& c : n.relations()) {
        Column x(sm * gn);
        for (std::size_t j = 0; j < gn; ++j) x[k * gn + j] = c[j];
        rels.push_back(std::move(x));
      }
    return rels;
  }(), tgt_grading);
  ModuleMap phi{ambient_, target, {}};
  for (std::size_t i = 0; i < gm; ++i)
    for (std::size_t j = 0; j < gn; ++j) {
      Column x(sm * gn);
      for (std::size_t k = 0; k < sm; ++k) x[k * gn + j] = m.relations()[k][i];
      phi.matrix.push_back(std::move(x));
    }
  auto k = kernel(phi);
  h_ = k.module;
  incl_ = k.incl;
  lifter_ = std::make_shared<Lifter>(r, ambient_.gens(), incl_.matrix, ambient_.relations());
}

ModuleMap HomModule::interpret(const Column& element) const {
  Column amb = apply_map(incl_, element);
  std::size_t gn = n_.gens();
  ModuleMap f{m_, n_, {}};
  for (std::size_t i = 0; i < m_.gens(); ++i)
    f.matrix.push_back(Column(amb.begin() + static_cast<long>(i * gn), amb.begin() + static_cast<long>((i + 1) * gn)));
  return f;
}

ModuleMap HomModule::generator(std::size_t k) const { return interpret(unit_column(*m_.ring(), h_.gens(), k)); }

Column HomModule::element_of(const ModuleMap& f) const {
  Column amb;
  for (const auto& c : f.matrix) amb.insert(amb.end(), c.begin(), c.end());
  auto c = lifter_->lift(amb);
  if (!c) throw Error("map is not an element of the Hom module");
  return *c;
}

// ---------------------------------------------------------------- limits

PullbackResult pullback(const ModuleMap& f, const ModuleMap& g) {
  if (f.target.gens() != g.target.gens()) throw Error("pullback target mismatch");
  auto d = direct_sum(f.source, g.source);
  ModuleMap h = map_row(f, map_scale(g, f.target.ring()->constant(Coeff(-1))));
  h.source = d.module;
  auto k = kernel(h);
  return {k.module, compose(d.proj1, k.incl), compose(d.proj2, k.incl)};
}

PushoutResult pushout(const ModuleMap& f, const ModuleMap& g) {
  if (f.source.gens() != g.source.gens()) throw Error("pushout source mismatch");
  auto d = direct_sum(f.target, g.target);
  ModuleMap h = map_column(f, map_scale(g, f.source.ring()->constant(Coeff(-1))));
  h.target = d.module;
  auto c = cokernel(h);
  return {c.module, compose(c.proj, d.inc1), compose(c.proj, d.inc2)};
}

std::optional<std::size_t> uncovered_generator(const ModuleMap& f) {
  auto c = cokernel(f);
  for (std::size_t i = 0; i < c.module.gens(); ++i)
    if (c.module.gb().is_standard(static_cast<std::uint32_t>(i), Monomial{})) return i;
  return std::nullopt;
}

bool is_surjective(const ModuleMap& f) { return !uncovered_generator(f).has_value(); }

bool is_injective(const ModuleMap& f) { return is_zero(kernel(f).module); }

bool is_iso(const ModuleMap& f) { return is_surjective(f) && is_injective(f); }

std::optional<ModuleMap> factor_through(const ModuleMap& f, const ModuleMap& g) {
  Lifter l(*g.target.ring(), g.target.gens(), g.matrix, g.target.relations());
  ModuleMap h{f.source, g.source, {}};
  for (const auto& c : f.matrix) {
    auto x = l.lift(c);
    if (!x) return std::nullopt;
    h.matrix.push_back(std::move(*x));
  }
  return h;
}

std::optional<ModuleMap> factor_through_epi(const ModuleMap& f, const ModuleMap& g) {
  const PolyRing& r = *g.target.ring();
  Lifter l(r, g.target.gens(), g.matrix, g.target.relations());
  ModuleMap h{g.target, f.target, {}};
  for (std::size_t j = 0; j < g.target.gens(); ++j) {
    auto x = l.lift(unit_column(r, g.target.gens(), j));
    if (!x) return std::nullopt;
    h.matrix.push_back(apply_map(f, *x));
  }
  if (!well_defined(h) || !maps_equal(compose(h, g), f)) return std::nullopt;
  return h;
}

std::optional<ModuleMap> inverse(const ModuleMap& f) {
  auto h = factor_through(identity_map(f.target), f);
  if (!h) return std::nullopt;
  if (!well_defined(*h) || !maps_equal(compose(*h, f), identity_map(f.source))) return std::nullopt;
  return h;
}

// ---------------------------------------------------------------- chain colimits

namespace {

struct ChainState {
  const Chain& chain;
  ChainColimitResult& res;
  std::map<std::size_t, bool> iso;
  std::map<std::pair<std::size_t, std::size_t>, PresentedModule> reduced;
  std::map<std::pair<std::size_t, std::size_t>, bool> reduced_iso;

  void ensure(std::size_t n) {
    while (res.stages.size() <= n) {
      std::size_t k = res.stages.size();
      res.stages.push_back(chain.stage(k));
      if (k > 0) {
        ModuleMap t = chain.transition(k - 1, res.stages[k - 1], res.stages[k]);
        if (t.matrix.size() != res.stages[k - 1].gens()) throw Error("non-composable transitions");
        for (const auto& c : t.matrix)
          if (c.size() != res.stages[k].gens()) throw Error("non-composable transitions");
        res.transitions.push_back(std::move(t));
      }
    }
  }

  bool plain_iso(std::size_t n) {
    auto it = iso.find(n);
    if (it != iso.end()) return it->second;
    bool v = is_iso(res.transitions[n]);
    iso[n] = v;
    return v;
  }

  const PresentedModule& reduced_stage(std::size_t n, std::size_t k) {
    auto key = std::make_pair(n, k);
    auto it = reduced.find(key);
    if (it != reduced.end()) return it->second;
    ModuleMap c = identity_map(res.stages[n]);
    for (std::size_t j = n; j < n + k; ++j) c = compose(res.transitions[j], c);
    auto ker = kernel(c);
    auto q = cokernel(ker.incl);
    return reduced.emplace(key, q.module).first->second;
  }

  bool reduced_transition_iso(std::size_t n, std::size_t k) {
    auto key = std::make_pair(n, k);
    auto it = reduced_iso.find(key);
    if (it != reduced_iso.end()) return it->second;
    ModuleMap t{reduced_stage(n, k), reduced_stage(n + 1, k), res.transitions[n].matrix};
    bool v = is_iso(t);
    reduced_iso[key] = v;
    return v;
  }
};

}  // namespace

ChainColimitResult chain_colimit(const Chain& chain, std::size_t n_max, std::size_t min_stages) {
  if (n_max < 1) throw Error("n_max must be at least 1");
  ChainColimitResult res;
  ChainState st{chain, res, {}, {}, {}};
  for (std::size_t top = 0; top <= n_max; ++top) {
    st.ensure(top);
    if (top < 2) continue;
    std::size_t n = top - 2;
    if (st.plain_iso(n) && st.plain_iso(n + 1)) {
      res.stabilized_at = n;
      res.truncated = false;
      res.value = res.stages[n];
      res.to_value = identity_map(res.stages[n]);
      st.ensure(min_stages);
      return res;
    }
    for (std::size_t k = 1; k + 2 <= top; ++k) {
      std::size_t m = top - 2 - k;
      if (st.reduced_transition_iso(m, k) && st.reduced_transition_iso(m + 1, k)) {
        res.stabilized_at = m;
        res.truncated = false;
        res.lookahead = k;
        res.value = st.reduced_stage(m, k);
        res.to_value = ModuleMap{res.stages[m], res.value, identity_map(res.stages[m]).matrix};
        st.ensure(min_stages);
        return res;
      }
    }
  }
  res.value = res.stages[n_max];
  res.to_value = identity_map(res.value);
  return res;
}

// ---------------------------------------------------------------- graded dimensions

namespace {

void enumerate_positive(const PolyRing& r, long e, std::size_t var, Monomial& cur, std::vector<Monomial>& out) {
  if (var == r.nvars()) {
    if (e == 0) out.push_back(cur);
    return;
  }
  long w = r.weights()[var];
  for (long k = 0; k * w <= e; ++k) {
    cur.exp[var] = static_cast<std::uint16_t>(k);
    cur.deg += static_cast<std::uint32_t>(k);
    enumerate_positive(r, e - k * w, var + 1, cur, out);
    cur.deg -= static_cast<std::uint32_t>(k);
  }
  cur.exp[var] = 0;
}

void enumerate_capped(const PolyRing& r, long e, std::size_t var, unsigned cap, Monomial& cur,
                      std::vector<Monomial>& out) {
  if (var == r.nvars()) {
    if (r.wdeg(cur) == e) out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= cap; ++k) {
    cur.exp[var] = static_cast<std::uint16_t>(k);
    cur.deg += k;
    enumerate_capped(r, e, var + 1, cap, cur, out);
    cur.deg -= k;
  }
  cur.exp[var] = 0;
}

std::vector<GradedBasisElement> standard_at(const PresentedModule& m, long d, unsigned cap) {
  const PolyRing& r = *m.ring();
  std::vector<GradedBasisElement> out;
  for (std::size_t i = 0; i < m.gens(); ++i) {
    long e = d - (*m.grading())[i];
    std::vector<Monomial> monos;
    Monomial cur;
    if (r.positive_weights()) {
      if (e >= 0) enumerate_positive(r, e, 0, cur, monos);
    } else {
      enumerate_capped(r, e, 0, cap, cur, monos);
    }
    for (const auto& mo : monos)
      if (m.gb().is_standard(static_cast<std::uint32_t>(i), mo)) out.push_back({static_cast<std::uint32_t>(i), mo});
  }
  std::sort(out.begin(), out.end(), [&](const GradedBasisElement& a, const GradedBasisElement& b) {
    return vterm_cmp(r, {a.pos, a.mono, Coeff(1)}, {b.pos, b.mono, Coeff(1)}) > 0;
  });
  return out;
}

}  // namespace

std::vector<GradedBasisElement> graded_basis(const PresentedModule& m, long d) {
  if (!m.grading()) throw Error("graded dimension requested for an ungraded module");
  if (m.ring()->positive_weights()) return standard_at(m, d, 0);
  unsigned cap = 8;
  auto prev = standard_at(m, d, cap);
  while (cap <= 64) {
    cap *= 2;
    auto next = standard_at(m, d, cap);
    if (next.size() == prev.size()) return next;
    prev = std::move(next);
  }
  throw Error("graded component is not finite-dimensional within the search cap");
}

std::size_t graded_dim(const PresentedModule& m, long d) { return graded_basis(m, d).size(); }

std::size_t field_rank(const Field& f, std::vector<std::vector<Coeff>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t ncols = rows[0].size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    Coeff inv = f.inv(rows[rank][col]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Coeff factor = f.mul(rows[r][col], inv);
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

std::size_t graded_rank(const ModuleMap& f, long d) {
  const PolyRing& r = *f.source.ring();
  auto src = graded_basis(f.source, d);
  auto tgt = graded_basis(f.target, d);
  if (src.empty() || tgt.empty()) return 0;
  std::vector<std::vector<Coeff>> rows;
  for (const auto& b : src) {
    Column img = column_scale(r, f.matrix[b.pos], r.term(b.mono, Coeff(1)));
    Vec red = f.target.gb().reduce(column_to_vec(img));
    std::vector<Coeff> row(tgt.size(), Coeff(0));
    for (const auto& t : red) {
      auto it = std::find_if(tgt.begin(), tgt.end(),
                             [&](const GradedBasisElement& e) { return e.pos == t.pos && e.mono == t.mono; });
      if (it == tgt.end()) throw Error("map is not degree-preserving");
      row[static_cast<std::size_t>(it - tgt.begin())] = t.coeff;
    }
    rows.push_back(std::move(row));
  }
  return field_rank(r.field(), std::move(rows));
}

}  // namespace idalkit
