#include "idalkit/localize.hpp"

#include <algorithm>
#include <memory>

namespace idalkit {

ModuleMap precompose(const HomModule& from, const HomModule& to, const ModuleMap& t) {
  ModuleMap out{from.module(), to.module(), {}};
  for (std::size_t k = 0; k < from.module().gens(); ++k)
    out.matrix.push_back(to.element_of(compose(from.generator(k), t)));
  return out;
}

CanonicalMap canonical_to_hom(const Idal& j, const PresentedModule& m) {
  if (!same_ring(j.carrier, m)) throw Error("ring mismatch");
  HomModule h(j.carrier, m);
  ModuleMap map{m, h.module(), {}};
  for (std::size_t k = 0; k < m.gens(); ++k) {
    ModuleMap phi{j.carrier, m, {}};
    for (const auto& c : j.e.matrix) phi.matrix.push_back(column_scale(*m.ring(), unit_column(*m.ring(), m.gens(), k), c[0]));
    map.matrix.push_back(h.element_of(phi));
  }
  return {h, map};
}

bool believes(const Idal& j, const PresentedModule& m) { return is_iso(canonical_to_hom(j, m).map); }

ReflectorResult reflect(const Idal& j, const PresentedModule& m, std::size_t n_max, std::size_t min_stages) {
  auto homs = std::make_shared<std::vector<HomModule>>();
  auto powers = std::make_shared<std::vector<Idal>>();
  auto power = [=](std::size_t n) -> const Idal& {
    while (powers->size() <= n) powers->push_back(idal_tensor_power(j, powers->size()));
    return (*powers)[n];
  };
  Chain chain{
      [=](std::size_t n) {
        while (homs->size() <= n) homs->emplace_back(power(homs->size()).carrier, m);
        return (*homs)[n].module();
      },
      [=](std::size_t n, const PresentedModule&, const PresentedModule&) {
        return precompose((*homs)[n], (*homs)[n + 1], idal_transition(j, n + 1, n));
      }};
  ReflectorResult res{m, j, chain_colimit(chain, n_max, min_stages), {}, {}};
  res.homs = *homs;
  const HomModule& h0 = res.homs[0];
  ModuleMap unit{m, h0.module(), {}};
  for (std::size_t k = 0; k < m.gens(); ++k)
    unit.matrix.push_back(h0.element_of(ModuleMap{h0.source(), m, {unit_column(*m.ring(), m.gens(), k)}}));
  std::size_t last = res.chain.stabilized_at.value_or(res.chain.stages.size() - 1);
  for (std::size_t n = 0; n < last; ++n) unit = compose(res.chain.transitions[n], unit);
  res.unit = compose(res.chain.to_value, unit);
  return res;
}

ModuleMap DeligneHomResult::interpret(std::size_t n, const Column& element) const { return homs.at(n).interpret(element); }

DeligneHomResult deligne_hom(const Idal& j, const PresentedModule& m, const PresentedModule& n, std::size_t n_max) {
  if (!same_ring(j.carrier, m) || !same_ring(m, n)) throw Error("ring mismatch");
  auto homs = std::make_shared<std::vector<HomModule>>();
  auto powers = std::make_shared<std::vector<Idal>>();
  auto power = [=](std::size_t k) -> const Idal& {
    while (powers->size() <= k) powers->push_back(idal_tensor_power(j, powers->size()));
    return (*powers)[k];
  };
  Chain chain{
      [=](std::size_t k) {
        while (homs->size() <= k) homs->emplace_back(tensor(power(homs->size()).carrier, m), n);
        return (*homs)[k].module();
      },
      [=](std::size_t k, const PresentedModule&, const PresentedModule&) {
        ModuleMap t = tensor_map(idal_transition(j, k + 1, k), identity_map(m));
        return precompose((*homs)[k], (*homs)[k + 1], t);
      }};
  DeligneHomResult res{j, m, n, chain_colimit(chain, n_max), {}};
  res.homs = *homs;
  return res;
}

LocalizedRing localize_ring(const RingPtr& a, const Poly& f, const std::string& inverse_name) {
  if (f.is_zero()) throw Error("cannot invert zero");
  std::string name = inverse_name;
  if (name.empty()) {
    name = "u";
    for (int k = 1; std::find(a->vars().begin(), a->vars().end(), name) != a->vars().end(); ++k) name = "u" + std::to_string(k);
  }
  std::vector<std::string> vars{name};
  vars.insert(vars.end(), a->vars().begin(), a->vars().end());
  auto deg = a->homogeneous_degree(f);
  std::vector<int> weights{deg ? -static_cast<int>(*deg) : 0};
  weights.insert(weights.end(), a->weights().begin(), a->weights().end());
  auto shift = [](const Poly& p) {
    Poly q = p;
    for (auto& t : q.terms) {
      for (std::size_t i = kMaxVars - 1; i > 0; --i) t.mono.exp[i] = t.mono.exp[i - 1];
      t.mono.exp[0] = 0;
    }
    return q;
  };
  auto free = PolyRing::make_with(a->field(), vars, Order::Lex, {}, weights);
  std::vector<Poly> q;
  for (const auto& g : a->quotient_gb()) q.push_back(free->sort_raw(shift(g).terms));
  q.push_back(free->sub(free->mul(free->var(0), free->sort_raw(shift(f).terms)), free->one()));
  auto ring = PolyRing::make_with(a->field(), vars, Order::Lex, q, weights);
  LocalizedRing loc{ring, RingHom{a, ring, {}}, ring->var(0), 0};
  for (std::size_t i = 0; i < a->nvars(); ++i) loc.from_base.images.push_back(ring->var(i + 1));
  return loc;
}

PresentedModule localization_oracle(const LocalizedRing& loc, const PresentedModule& m) { return base_change(loc.from_base, m); }

PresentedModule localization_oracle(const Poly& f, const PresentedModule& m) {
  return localization_oracle(localize_ring(m.ring(), f), m);
}

WindowComparison deligne_window(const Idal& j, const PresentedModule& m, const PresentedModule& n,
                                const PresentedModule& oracle, long bound, std::size_t n_max) {
  WindowComparison out;
  for (long d = -bound; d <= bound; ++d) out.degrees.push_back(d);
  std::vector<HomModule> homs;
  std::vector<ModuleMap> trans;
  std::vector<bool> bijective;
  auto stage = [&](std::size_t k) {
    while (homs.size() <= k) homs.emplace_back(tensor(idal_tensor_power(j, homs.size()).carrier, m), n);
  };
  for (std::size_t k = 0; k <= n_max + 1; ++k) {
    stage(k + 1);
    ModuleMap t = tensor_map(idal_transition(j, k + 1, k), identity_map(m));
    trans.push_back(precompose(homs[k], homs[k + 1], t));
    bool ok = true;
    for (long d : out.degrees) {
      std::size_t a = graded_dim(homs[k].module(), d), b = graded_dim(homs[k + 1].module(), d);
      if (a != b || graded_rank(trans[k], d) != a) {
        ok = false;
        break;
      }
    }
    bijective.push_back(ok);
    if (k >= 1 && bijective[k - 1] && bijective[k]) {
      out.stable_stage = k - 1;
      break;
    }
  }
  if (!out.stable_stage) return out;
  out.agrees = true;
  for (long d : out.degrees) {
    out.stage_dims.push_back(graded_dim(homs[*out.stable_stage].module(), d));
    out.oracle_dims.push_back(graded_dim(oracle, d));
    if (out.stage_dims.back() != out.oracle_dims.back()) out.agrees = false;
  }
  return out;
}

PresentedModule quotient_functor(const ModuleMap& e, const PresentedModule& m) {
  if (!same_ring(e.source, m)) throw Error("ring mismatch");
  return tensor(m, cokernel(e).module);
}

PresentedModule quotient_functor(const Idal& i, const PresentedModule& m) { return quotient_functor(i.e, m); }

IntersectionReport intersection_report(const Idal& i, const Idal& j, const PresentedModule& m) {
  return {believes(idal_product(i, j), m), believes(i, m), believes(j, m)};
}

bool intersection_check(const Idal& i, const Idal& j, const PresentedModule& m) { return intersection_report(i, j, m).holds(); }

std::optional<ComparisonResult> idal_comparison_search(const Idal& i, const Idal& j, std::size_t n_max) {
  if (!same_ring(i.carrier, j.carrier)) throw Error("ring mismatch");
  const PolyRing& r = *i.ring();
  for (std::size_t n = 1; n <= n_max; ++n) {
    Idal jn = idal_tensor_power(j, n);
    HomModule to_i(jn.carrier, i.carrier);
    HomModule to_o(jn.carrier, unit_module(i.ring()));
    std::vector<Column> images;
    for (std::size_t k = 0; k < to_i.module().gens(); ++k)
      images.push_back(to_o.element_of(compose(i.e, to_i.generator(k))));
    Column target = to_o.element_of(jn.e);
    Lifter l(r, to_o.module().gens(), images, to_o.module().relations());
    auto c = l.lift(target);
    if (!c) continue;
    ModuleMap g = to_i.interpret(*c);
    IdalMorphism mor{jn, i, g};
    if (!is_idal_morphism(mor)) throw Error("comparison lift failed verification");
    return ComparisonResult{n, mor};
  }
  return std::nullopt;
}

}  // namespace idalkit
