#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "idalkit/module_gb.hpp"
#include "idalkit/ring.hpp"

namespace idalkit {

using Grading = std::vector<long>;

// Cokernel of the relation matrix: R^gens / span(relations).
// Immutable once built; the relation Gröbner basis is computed on first use.
class PresentedModule {
 public:
  PresentedModule() = default;
  PresentedModule(RingPtr ring, std::size_t gens, std::vector<Column> relations,
                  std::optional<Grading> grading = std::nullopt);

  const RingPtr& ring() const { return ring_; }
  std::size_t gens() const { return gens_; }
  const std::vector<Column>& relations() const { return relations_; }
  const std::optional<Grading>& grading() const { return grading_; }

  const ModuleGB& gb() const;
  Column reduce(const Column& v) const;
  bool is_zero_element(const Column& v) const;

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<ModuleGB> gb;
  };
  RingPtr ring_;
  std::size_t gens_ = 0;
  std::vector<Column> relations_;
  std::optional<Grading> grading_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// matrix[i] is the image of source generator i, a column of target.gens() entries.
struct ModuleMap {
  PresentedModule source;
  PresentedModule target;
  std::vector<Column> matrix;
};

PresentedModule free_module(const RingPtr& ring, std::size_t rank, std::optional<Grading> grading = std::nullopt);
// grading inferred from the ambient degrees when every column is homogeneous
std::optional<Grading> infer_grading(const PolyRing& ring, const std::optional<Grading>& ambient,
                                     const std::vector<Column>& columns);
bool column_homogeneous(const PolyRing& ring, const Grading& ambient, const Column& c, long* degree = nullptr);

Column unit_column(const PolyRing& ring, std::size_t rank, std::size_t i);
Column zero_column(std::size_t rank);
Column column_add(const PolyRing& ring, const Column& a, const Column& b);
Column column_sub(const PolyRing& ring, const Column& a, const Column& b);
Column column_scale(const PolyRing& ring, const Column& a, const Poly& p);
bool column_is_zero(const Column& c);

bool is_zero(const PresentedModule& m);
bool same_ring(const PresentedModule& a, const PresentedModule& b);

Column apply_map(const ModuleMap& f, const Column& v);
bool well_defined(const ModuleMap& f);
bool maps_equal(const ModuleMap& f, const ModuleMap& g);
bool is_zero_map(const ModuleMap& f);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap identity_map(const PresentedModule& m);
ModuleMap zero_map(const PresentedModule& s, const PresentedModule& t);
ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_add(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_scale(const ModuleMap& f, const Poly& p);

struct KernelResult {
  PresentedModule module;
  ModuleMap incl;
};
KernelResult kernel(const ModuleMap& f);

struct CokernelResult {
  PresentedModule module;
  ModuleMap proj;
};
CokernelResult cokernel(const ModuleMap& f);

struct ImageResult {
  PresentedModule module;
  ModuleMap incl;  // image -> target
  ModuleMap proj;  // source -> image
};
ImageResult image(const ModuleMap& f);

struct DirectSum {
  PresentedModule module;
  ModuleMap inc1, inc2, proj1, proj2;
};
DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b);
PresentedModule direct_sum_many(const std::vector<PresentedModule>& ms);
ModuleMap map_direct_sum(const ModuleMap& f, const ModuleMap& g);
// (f, g) : A + B -> T
ModuleMap map_row(const ModuleMap& f, const ModuleMap& g);
// (f; g) : S -> A + B
ModuleMap map_column(const ModuleMap& f, const ModuleMap& g);

PresentedModule tensor(const PresentedModule& m, const PresentedModule& n);
ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g);
// canonical isomorphism M (x) N -> N (x) M
ModuleMap swap_map(const PresentedModule& m, const PresentedModule& n);

class HomModule {
 public:
  HomModule(const PresentedModule& m, const PresentedModule& n);

  const PresentedModule& module() const { return h_; }
  const PresentedModule& source() const { return m_; }
  const PresentedModule& target() const { return n_; }
  // generator coordinates -> map M -> N
  ModuleMap interpret(const Column& element) const;
  ModuleMap generator(std::size_t k) const;
  // map M -> N -> coordinates in H
  Column element_of(const ModuleMap& f) const;
  // H -> ambient N^{gens(M)}
  const ModuleMap& inclusion() const { return incl_; }

 private:
  PresentedModule m_, n_, ambient_, h_;
  ModuleMap incl_;
  std::shared_ptr<Lifter> lifter_;
};

struct PullbackResult {
  PresentedModule module;
  ModuleMap p1, p2;
};
PullbackResult pullback(const ModuleMap& f, const ModuleMap& g);

struct PushoutResult {
  PresentedModule module;
  ModuleMap i1, i2;
};
PushoutResult pushout(const ModuleMap& f, const ModuleMap& g);

bool is_iso(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
// first target generator not hit by f, if any
std::optional<std::size_t> uncovered_generator(const ModuleMap& f);

// h with g o h = f when g is a monomorphism onto a submodule containing im f
std::optional<ModuleMap> factor_through(const ModuleMap& f, const ModuleMap& g);
// h with h o g = f, given g surjective and f vanishing on ker g
std::optional<ModuleMap> factor_through_epi(const ModuleMap& f, const ModuleMap& g);
std::optional<ModuleMap> inverse(const ModuleMap& f);

struct Simplified {
  PresentedModule module;
  ModuleMap to, from;  // mutually inverse isomorphisms with the input
};
// removes generators killed by unit relation entries
Simplified simplify(const PresentedModule& m);

struct ChainColimitResult {
  std::vector<PresentedModule> stages;
  std::vector<ModuleMap> transitions;  // transitions[n] : stages[n] -> stages[n+1]
  PresentedModule value;
  ModuleMap to_value;  // stages[stabilized_at or last] -> value
  std::optional<std::size_t> stabilized_at;
  bool truncated = true;
  std::size_t lookahead = 0;
};

struct Chain {
  std::function<PresentedModule(std::size_t)> stage;
  std::function<ModuleMap(std::size_t, const PresentedModule&, const PresentedModule&)> transition;
};

// min_stages: evaluate at least stages 0..min_stages even after stabilization
ChainColimitResult chain_colimit(const Chain& chain, std::size_t n_max, std::size_t min_stages = 0);

struct GradedBasisElement {
  std::uint32_t pos;
  Monomial mono;
};
std::vector<GradedBasisElement> graded_basis(const PresentedModule& m, long d);
std::size_t graded_dim(const PresentedModule& m, long d);
// rank of the degree-d component of a degree-preserving map
std::size_t graded_rank(const ModuleMap& f, long d);

std::size_t field_rank(const Field& f, std::vector<std::vector<Coeff>> rows);

}  // namespace idalkit
