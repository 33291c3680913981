#pragma once

#include <optional>
#include <vector>

#include "idalkit/idal.hpp"

namespace idalkit {

// Hom(A, M) -> Hom(B, M) induced by t : B -> A
ModuleMap precompose(const HomModule& from, const HomModule& to, const ModuleMap& t);

struct CanonicalMap {
  HomModule hom;  // HOM(carrier(J), M)
  ModuleMap map;  // M -> hom.module()
};
CanonicalMap canonical_to_hom(const Idal& j, const PresentedModule& m);

bool believes(const Idal& j, const PresentedModule& m);

struct ReflectorResult {
  PresentedModule input;
  Idal idal;
  ChainColimitResult chain;
  ModuleMap unit;                // input -> chain.value
  std::vector<HomModule> homs;   // homs[n] presents stages[n] = HOM(J^n, M)
};
ReflectorResult reflect(const Idal& j, const PresentedModule& m, std::size_t n_max, std::size_t min_stages = 0);

struct DeligneHomResult {
  Idal idal;
  PresentedModule source, target;
  ChainColimitResult chain;
  std::vector<HomModule> homs;  // homs[n] presents Hom(J^n (x) M, N)

  // element of the stage `n` module -> map J^n (x) M -> N
  ModuleMap interpret(std::size_t n, const Column& element) const;
};
DeligneHomResult deligne_hom(const Idal& j, const PresentedModule& m, const PresentedModule& n, std::size_t n_max);

struct LocalizedRing {
  RingPtr ring;       // A[u]/(u f - 1), u first, lex order
  RingHom from_base;  // A -> A_f
  Poly inverse;       // u
  std::size_t inverse_var = 0;
};
LocalizedRing localize_ring(const RingPtr& a, const Poly& f, const std::string& inverse_name = "");
// Base change along A -> A[u]/(u f - 1); grading kept when f is homogeneous.
PresentedModule localization_oracle(const Poly& f, const PresentedModule& m);
PresentedModule localization_oracle(const LocalizedRing& loc, const PresentedModule& m);

struct WindowComparison {
  std::optional<std::size_t> stable_stage;  // first n with bijective transitions n, n+1 in the window
  bool agrees = false;
  std::vector<long> degrees;
  std::vector<std::size_t> stage_dims, oracle_dims;
};
// Graded window |d| <= bound of the Deligne chain Hom(J^n (x) M, N) against an oracle module.
WindowComparison deligne_window(const Idal& j, const PresentedModule& m, const PresentedModule& n,
                                const PresentedModule& oracle, long bound, std::size_t n_max);

PresentedModule quotient_functor(const ModuleMap& e, const PresentedModule& m);
PresentedModule quotient_functor(const Idal& i, const PresentedModule& m);

struct IntersectionReport {
  bool product, first, second;
  bool holds() const { return product == (first && second); }
};
IntersectionReport intersection_report(const Idal& i, const Idal& j, const PresentedModule& m);
bool intersection_check(const Idal& i, const Idal& j, const PresentedModule& m);

struct ComparisonResult {
  std::size_t n;
  IdalMorphism morphism;  // J^n -> I
};
std::optional<ComparisonResult> idal_comparison_search(const Idal& i, const Idal& j, std::size_t n_max);

}  // namespace idalkit
