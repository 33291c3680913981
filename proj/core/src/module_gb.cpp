#include "idalkit/module_gb.hpp"

#include <algorithm>

namespace idalkit {

Vec poly_to_vec(const Poly& p, std::uint32_t pos) {
  Vec v;
  v.reserve(p.terms.size());
  for (const auto& t : p.terms) v.push_back({pos, t.mono, t.coeff});
  return v;
}

Poly vec_entry(const Vec& v, std::uint32_t pos) {
  Poly p;
  for (const auto& t : v)
    if (t.pos == pos) p.terms.push_back({t.mono, t.coeff});
  return p;
}

Vec column_to_vec(const Column& c) {
  Vec v;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& t : c[i].terms) v.push_back({static_cast<std::uint32_t>(i), t.mono, t.coeff});
  return v;
}

Column vec_to_column(const Vec& v, std::size_t rank) {
  Column c(rank);
  for (const auto& t : v) {
    if (t.pos >= rank) throw Error("vector position exceeds rank");
    c[t.pos].terms.push_back({t.mono, t.coeff});
  }
  return c;
}

int vterm_cmp(const PolyRing& r, const VTerm& a, const VTerm& b) {
  if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
  return r.cmp(a.mono, b.mono);
}

Vec vec_axpy(const PolyRing& r, const Vec& a, const Coeff& c, const Monomial& m, const Vec& b) {
  const Field& f = r.field();
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    VTerm bt{b[j].pos, mono_mul(m, b[j].mono), Coeff()};
    int k = i < a.size() ? vterm_cmp(r, a[i], bt) : -1;
    if (k > 0) {
      out.push_back(a[i++]);
    } else if (k < 0) {
      bt.coeff = f.mul(c, b[j].coeff);
      out.push_back(std::move(bt));
      ++j;
    } else {
      Coeff s = f.add(a[i].coeff, f.mul(c, b[j].coeff));
      if (s != 0) {
        bt.coeff = s;
        out.push_back(std::move(bt));
      }
      ++i;
      ++j;
    }
  }
  return out;
}

Vec vec_scale(const PolyRing& r, const Vec& a, const Coeff& c) {
  if (c == 0) return {};
  Vec out = a;
  for (auto& t : out) t.coeff = r.field().mul(t.coeff, c);
  return out;
}

Vec vec_add(const PolyRing& r, const Vec& a, const Vec& b) { return vec_axpy(r, a, Coeff(1), Monomial{}, b); }

Vec vec_mul_poly(const PolyRing& r, const Vec& a, const Poly& p) {
  Vec out;
  for (const auto& t : p.terms) out = vec_axpy(r, out, t.coeff, t.mono, a);
  return out;
}

Vec vec_shift(const Vec& v, std::uint32_t offset) {
  Vec out = v;
  for (auto& t : out) t.pos += offset;
  return out;
}

namespace {

Vec make_monic(const PolyRing& r, Vec v) {
  if (v.empty() || v[0].coeff == 1) return v;
  Coeff inv = r.field().inv(v[0].coeff);
  for (auto& t : v) t.coeff = r.field().mul(t.coeff, inv);
  return v;
}

class Buchberger {
 public:
  Buchberger(const PolyRing& r, std::size_t rank) : r_(r), rank_(rank), by_pos_(rank) {}

  void insert(const Vec& g) {
    unsigned sugar = 0;
    for (const auto& t : g) sugar = std::max(sugar, t.mono.deg);
    Vec h = top_reduce(g, sugar);
    if (!h.empty()) add(std::move(h), sugar);
  }

  void run() {
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      const Vec& gi = elems_[p.i].v;
      const Vec& gj = elems_[p.j].v;
      Monomial mi = mono_div(p.lcm, gi[0].mono);
      Monomial mj = mono_div(p.lcm, gj[0].mono);
      Vec s = vec_axpy(r_, vec_axpy(r_, {}, Coeff(1), mi, gi), r_.field().neg(Coeff(1)), mj, gj);
      unsigned sugar = p.sugar;
      Vec h = top_reduce(std::move(s), sugar);
      if (!h.empty()) add(std::move(h), sugar);
    }
  }

  std::vector<Vec> finish() {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      const VTerm& li = elems_[i].v[0];
      bool redundant = false;
      for (std::size_t j : by_pos_[li.pos]) {
        if (j == i) continue;
        const Monomial& lj = elems_[j].v[0].mono;
        if (lj.divides(li.mono) && (!(lj == li.mono) || j < i)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) keep.push_back(i);
    }
    std::vector<Vec> mins;
    for (std::size_t i : keep) mins.push_back(elems_[i].v);
    std::vector<std::vector<std::size_t>> idx(rank_);
    for (std::size_t k = 0; k < mins.size(); ++k) idx[mins[k][0].pos].push_back(k);
    std::vector<Vec> out;
    for (std::size_t k = 0; k < mins.size(); ++k) {
      Vec head{mins[k][0]};
      Vec tail(mins[k].begin() + 1, mins[k].end());
      Vec red = full_reduce(r_, tail, mins, idx);
      head.insert(head.end(), red.begin(), red.end());
      out.push_back(make_monic(r_, std::move(head)));
    }
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) { return vterm_cmp(r_, a[0], b[0]) > 0; });
    return out;
  }

  static Vec full_reduce(const PolyRing& r, const Vec& v, const std::vector<Vec>& basis,
                         const std::vector<std::vector<std::size_t>>& idx) {
    Vec rem, cur = v;
    std::size_t pos = 0;
    while (pos < cur.size()) {
      const VTerm& t = cur[pos];
      const Vec* div = nullptr;
      if (t.pos < idx.size())
        for (std::size_t k : idx[t.pos])
          if (basis[k][0].mono.divides(t.mono)) {
            if (!div || basis[k].size() < div->size()) div = &basis[k];
          }
      if (!div) {
        rem.push_back(t);
        ++pos;
        continue;
      }
      Coeff c = r.field().neg(r.field().mul(t.coeff, r.field().inv((*div)[0].coeff)));
      Monomial m = mono_div(t.mono, (*div)[0].mono);
      Vec tail(cur.begin() + static_cast<long>(pos), cur.end());
      cur = vec_axpy(r, tail, c, m, *div);
      pos = 0;
    }
    return rem;
  }

 private:
  struct Elem {
    Vec v;
    unsigned sugar;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t pos;
    unsigned sugar;
  };

  const PolyRing& r_;
  std::size_t rank_;
  std::vector<Elem> elems_;
  std::vector<std::vector<std::size_t>> by_pos_;
  std::vector<Pair> pairs_;

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.pos != b.pos) return a.pos > b.pos;
    int c = r_.cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  Vec top_reduce(Vec f, unsigned& sugar) {
    while (!f.empty()) {
      const VTerm& t = f[0];
      std::size_t best = SIZE_MAX;
      for (std::size_t k : by_pos_[t.pos])
        if (elems_[k].v[0].mono.divides(t.mono))
          if (best == SIZE_MAX || elems_[k].v.size() < elems_[best].v.size()) best = k;
      if (best == SIZE_MAX) return f;
      const Elem& g = elems_[best];
      Monomial m = mono_div(t.mono, g.v[0].mono);
      sugar = std::max(sugar, m.deg + g.sugar);
      Coeff c = r_.field().neg(t.coeff);
      f = vec_axpy(r_, f, c, m, g.v);
    }
    return f;
  }

  void add(Vec h, unsigned sugar) {
    h = make_monic(r_, std::move(h));
    std::size_t k = elems_.size();
    std::uint32_t pos = h[0].pos;
    const Monomial& lh = h[0].mono;

    // chain criterion on existing pairs
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      if (p.pos == pos && lh.divides(p.lcm)) {
        Monomial li = mono_lcm(elems_[p.i].v[0].mono, lh);
        Monomial lj = mono_lcm(elems_[p.j].v[0].mono, lh);
        if (!(li == p.lcm) && !(lj == p.lcm)) continue;
      }
      kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);

    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool coprime;
      bool dead = false;
    };
    std::vector<Cand> cands;
    for (std::size_t i : by_pos_[pos]) {
      const Monomial& li = elems_[i].v[0].mono;
      cands.push_back({i, mono_lcm(li, lh), rank_ == 1 && li.coprime(lh)});
    }
    for (auto& a : cands)
      for (const auto& b : cands)
        if (&a != &b && b.lcm.divides(a.lcm) && !(b.lcm == a.lcm)) {
          a.dead = true;
          break;
        }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].dead) continue;
      bool any_coprime = cands[a].coprime;
      for (std::size_t b = a + 1; b < cands.size(); ++b)
        if (!cands[b].dead && cands[b].lcm == cands[a].lcm) {
          any_coprime = any_coprime || cands[b].coprime;
          cands[b].dead = true;
        }
      if (any_coprime) continue;
      const Elem& gi = elems_[cands[a].i];
      unsigned s = std::max(gi.sugar + cands[a].lcm.deg - gi.v[0].mono.deg, sugar + cands[a].lcm.deg - lh.deg);
      pairs_.push_back({cands[a].i, k, cands[a].lcm, pos, s});
    }
    elems_.push_back({std::move(h), sugar});
    by_pos_[pos].push_back(k);
  }
};

}  // namespace

ModuleGB::ModuleGB(const PolyRing& ring, std::size_t rank, const std::vector<Vec>& gens)
    : ring_(&ring), rank_(rank), leads_(rank), by_pos_(rank) {
  Buchberger bb(ring, rank);
  std::vector<Vec> input;
  for (const auto& q : ring.quotient_gb())
    for (std::size_t k = 0; k < rank; ++k) input.push_back(poly_to_vec(q, static_cast<std::uint32_t>(k)));
  for (const auto& g : gens) {
    for (const auto& t : g)
      if (t.pos >= rank) throw Error("generator exceeds module rank");
    input.push_back(g);
  }
  for (const auto& g : input) bb.insert(g);
  bb.run();
  basis_ = bb.finish();
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    leads_[basis_[k][0].pos].push_back(basis_[k][0].mono);
    by_pos_[basis_[k][0].pos].push_back(k);
  }
}

Vec ModuleGB::reduce(const Vec& v) const { return Buchberger::full_reduce(*ring_, v, basis_, by_pos_); }

bool ModuleGB::is_standard(std::uint32_t pos, const Monomial& m) const {
  for (const auto& l : leads_[pos])
    if (l.divides(m)) return false;
  return true;
}

Lifter::Lifter(const PolyRing& ring, std::size_t rank, const std::vector<Column>& gens,
               const std::vector<Column>& relations)
    : ring_(&ring), rank_(rank), m_(gens.size()), gb_(ring, rank + gens.size(), [&] {
        std::vector<Vec> ext;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (gens[i].size() != rank) throw Error("generator length differs from ambient rank");
          Vec v = column_to_vec(gens[i]);
          v.push_back({static_cast<std::uint32_t>(rank + i), Monomial{}, Coeff(1)});
          ext.push_back(std::move(v));
        }
        for (const auto& rel : relations) {
          if (rel.size() != rank) throw Error("relation length differs from ambient rank");
          Vec v = column_to_vec(rel);
          if (!v.empty()) ext.push_back(std::move(v));
        }
        return ext;
      }()) {}

std::optional<Column> Lifter::lift(const Column& v) const {
  if (v.size() != rank_) throw Error("vector length differs from ambient rank");
  Vec w = gb_.reduce(column_to_vec(v));
  Column c(m_);
  for (const auto& t : w) {
    if (t.pos < rank_) return std::nullopt;
    c[t.pos - rank_].terms.push_back({t.mono, ring_->field().neg(t.coeff)});
  }
  for (auto& p : c) p = ring_->normal_form(p);
  return c;
}

std::vector<Column> Lifter::syzygies() const {
  std::vector<Column> out;
  for (const auto& g : gb_.basis()) {
    if (g[0].pos < rank_) continue;
    Column c(m_);
    for (const auto& t : g) c[t.pos - rank_].terms.push_back({t.mono, t.coeff});
    bool zero = true;
    for (auto& p : c) {
      p = ring_->normal_form(p);
      zero = zero && p.is_zero();
    }
    if (!zero) out.push_back(std::move(c));
  }
  return out;
}

Division divide_with_cofactors(const PolyRing& ring, const Vec& v, const std::vector<Vec>& basis) {
  Division d;
  d.cofactors.resize(basis.size());
  std::uint32_t rank = 0;
  for (const auto& b : basis)
    for (const auto& t : b) rank = std::max(rank, t.pos + 1);
  for (const auto& t : v)
    if (!basis.empty() && t.pos >= rank) throw Error("ambient rank mismatch in division");
  Vec cur = v;
  while (!cur.empty()) {
    const VTerm& t = cur[0];
    std::size_t k = 0;
    for (; k < basis.size(); ++k)
      if (!basis[k].empty() && basis[k][0].pos == t.pos && basis[k][0].mono.divides(t.mono)) break;
    if (k == basis.size()) {
      d.remainder.push_back(t);
      cur.erase(cur.begin());
      continue;
    }
    Coeff c = ring.field().mul(t.coeff, ring.field().inv(basis[k][0].coeff));
    Monomial m = mono_div(t.mono, basis[k][0].mono);
    d.cofactors[k] = ring.add_raw(d.cofactors[k], ring.sort_raw({{m, c}}));
    cur = vec_axpy(ring, cur, ring.field().neg(c), m, basis[k]);
  }
  return d;
}

std::vector<Column> syzygies(const PolyRing& ring, std::size_t rank, const std::vector<Column>& gens) {
  return Lifter(ring, rank, gens, {}).syzygies();
}

}  // namespace idalkit
