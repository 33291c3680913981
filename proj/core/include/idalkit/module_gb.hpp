#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "idalkit/ring.hpp"

namespace idalkit {

struct VTerm {
  std::uint32_t pos;
  Monomial mono;
  Coeff coeff;
};

// Element of a free module. Terms sorted descending, position over term:
// a smaller position ranks higher.
using Vec = std::vector<VTerm>;

// Column of polynomials, one per generator.
using Column = std::vector<Poly>;

Vec poly_to_vec(const Poly& p, std::uint32_t pos);
Poly vec_entry(const Vec& v, std::uint32_t pos);
Vec column_to_vec(const Column& c);
Column vec_to_column(const Vec& v, std::size_t rank);

int vterm_cmp(const PolyRing& r, const VTerm& a, const VTerm& b);
Vec vec_axpy(const PolyRing& r, const Vec& a, const Coeff& c, const Monomial& m, const Vec& b);  // a + c*m*b
Vec vec_scale(const PolyRing& r, const Vec& a, const Coeff& c);
Vec vec_mul_poly(const PolyRing& r, const Vec& a, const Poly& p);  // no quotient reduction
Vec vec_add(const PolyRing& r, const Vec& a, const Vec& b);
Vec vec_shift(const Vec& v, std::uint32_t offset);

class ModuleGB {
 public:
  // Gröbner basis of the submodule of R^rank generated by gens plus the
  // quotient ideal times every basis vector.
  ModuleGB(const PolyRing& ring, std::size_t rank, const std::vector<Vec>& gens);

  const std::vector<Vec>& basis() const { return basis_; }
  std::size_t rank() const { return rank_; }
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  bool is_standard(std::uint32_t pos, const Monomial& m) const;
  // leading monomials per position
  const std::vector<std::vector<Monomial>>& leading() const { return leads_; }

 private:
  const PolyRing* ring_;
  std::size_t rank_;
  std::vector<Vec> basis_;
  std::vector<std::vector<Monomial>> leads_;
  std::vector<std::vector<std::size_t>> by_pos_;
};

// Expresses vectors as combinations of gens modulo relations.
class Lifter {
 public:
  Lifter(const PolyRing& ring, std::size_t rank, const std::vector<Column>& gens,
         const std::vector<Column>& relations);

  std::optional<Column> lift(const Column& v) const;
  // generators of {c : sum c_i gens_i in span(relations)}
  std::vector<Column> syzygies() const;

 private:
  const PolyRing* ring_;
  std::size_t rank_, m_;
  ModuleGB gb_;
};

struct Division {
  Vec remainder;
  std::vector<Poly> cofactors;
};

Division divide_with_cofactors(const PolyRing& ring, const Vec& v, const std::vector<Vec>& basis);

std::vector<Column> syzygies(const PolyRing& ring, std::size_t rank, const std::vector<Column>& gens);

}  // namespace idalkit
