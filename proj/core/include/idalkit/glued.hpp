#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idalkit/localize.hpp"

namespace idalkit {

// A1[1/f1] = O1 and A2[1/f2] = O2, identified by the ring isomorphisms to1, to2.
struct AffineOverlap {
  Poly f1, f2;
  LocalizedRing o1, o2;
  RingHom to1;  // O2 -> O1
  RingHom to2;  // O1 -> O2
};

// Both charts are Spec A, glued along the open set where J is invertible.
struct SelfGlueOverlap {
  Idal j;
};

struct TwoChartScheme {
  std::string name;
  RingPtr chart1, chart2;
  std::variant<AffineOverlap, SelfGlueOverlap> overlap;

  bool affine() const { return std::holds_alternative<AffineOverlap>(overlap); }
  const AffineOverlap& aff() const { return std::get<AffineOverlap>(overlap); }
  const SelfGlueOverlap& self() const { return std::get<SelfGlueOverlap>(overlap); }
  // Affine only: restrictions A1 -> O1 and A2 -> O1
  RingHom restrict1() const;
  RingHom restrict2() const;
};
using SchemePtr = std::shared_ptr<const TwoChartScheme>;

// images2: A2 variables as polynomials of O1; images1: A1 variables in O2.
// The inverse variables are named inv1 (in O1) and inv2 (in O2).
SchemePtr affine_scheme(const std::string& name, const RingPtr& a1, const std::string& f1, const std::string& inv1,
                        const RingPtr& a2, const std::string& f2, const std::string& inv2,
                        const std::vector<std::string>& images2, const std::vector<std::string>& images1);
SchemePtr self_glue_scheme(const std::string& name, const Idal& j);

// charts Spec k[t], Spec k[s], s = 1/t on the overlap
SchemePtr projective_line(Field field = Field{});
// two copies of A^n glued away from the origin
SchemePtr double_origin(std::size_t n, Field field = Field{});

// Affine: tau : m2|O1 -> m1|O1 over O1 and its inverse.
// SelfGlue: tau : J^level (x) m2 -> m1 and tau_inv : J^inv_level (x) m1 -> m2.
struct GluedModule {
  SchemePtr scheme;
  PresentedModule m1, m2;
  ModuleMap tau, tau_inv;
  std::size_t level = 0, inv_level = 0;
};

struct GluedMorphism {
  GluedModule source, target;
  ModuleMap g1, g2;
};

PresentedModule restrict1(const GluedModule& g);  // m1|O1 (affine)
PresentedModule restrict2(const GluedModule& g);  // m2|O1 (affine)

GluedModule glue(const SchemePtr& scheme, const PresentedModule& m1, const PresentedModule& m2,
                 const std::vector<Column>& tau, const std::optional<std::vector<Column>>& tau_inv,
                 std::size_t level = 0, std::size_t inv_level = 0, std::size_t n_max = 8);

GluedModule structure_sheaf(const SchemePtr& scheme);
GluedModule p1_standard(long n);
GluedModule p1_standard(const SchemePtr& p1, long n);

// SelfGlue helpers for maps f : J^k (x) M -> N
ModuleMap idal_action(const Idal& j, std::size_t level, const PresentedModule& m);  // e^level (x) M
ModuleMap raise_level(const Idal& j, const ModuleMap& f, std::size_t k, std::size_t to, const PresentedModule& m);
// first level <= n_max at which f and g agree after raising, if any
std::optional<std::size_t> deligne_equal(const Idal& j, const PresentedModule& m, const ModuleMap& f, std::size_t kf,
                                         const ModuleMap& g, std::size_t kg, std::size_t n_max);

bool is_glued_morphism(const GluedMorphism& h, std::size_t n_max = 8);
bool is_glued_iso(const GluedMorphism& h, std::size_t n_max = 8);

struct SectionsResult {
  long degree_bound = 0;
  std::size_t total = 0;
  std::vector<std::pair<long, std::size_t>> per_degree;  // graded SelfGlue only
  std::optional<PresentedModule> module;                  // SelfGlue
  std::optional<std::size_t> stabilized_at;
};
SectionsResult global_sections(const GluedModule& g, long degree_bound, std::size_t n_max = 8);

GluedModule direct_sum_glued(const GluedModule& a, const GluedModule& b, std::size_t n_max = 8);
GluedModule tensor_glued(const GluedModule& g, const GluedModule& h, std::size_t n_max = 8);
GluedModule hom_glued(const GluedModule& g, const GluedModule& h, std::size_t n_max = 8);
GluedModule tensor_power_glued(const GluedModule& g, std::size_t n, std::size_t n_max = 8);

struct InvertibleReport {
  bool chart1 = false, chart2 = false;
  std::optional<GluedModule> inverse;
  bool inverse_verified = false;
  bool holds() const { return chart1 && chart2 && inverse_verified; }
};
// chartwise: the evaluation Hom(M, O) (x) M -> O is an isomorphism
bool chart_invertible(const PresentedModule& m);
InvertibleReport invertible_check(const GluedModule& g, std::size_t n_max = 8);

// unit : O -> G (x) D and counit : D (x) G -> O, given chartwise
bool dualizable_check(const GluedModule& g, const GluedModule& dual, const GluedMorphism& unit,
                      const GluedMorphism& counit, std::size_t n_max = 8);
bool chart_symtrivial(const PresentedModule& m);
bool symtrivial_check(const GluedModule& g);

struct GlueRoundTrip {
  std::vector<bool> stage_iso;  // M -> HOM(I^n,M) x_{HOM(I^n (x) J^n,M)} HOM(J^n,M), n = 1..
  bool exact = false;           // all three reflectors stabilized
  std::optional<bool> regluing;  // principal idals: projections become isos after localizing
  bool holds() const;
};
GlueRoundTrip roundtrip_check(const Idal& i, const Idal& j, const PresentedModule& m, std::size_t n_max,
                              long degree_bound);

// chart idals: I1 invertible exactly on chart 1, I2 on chart 2
struct ChartIdal {
  GluedModule carrier;
  GluedMorphism e;  // carrier -> O
};
ChartIdal chart_idal(const SchemePtr& scheme, int chart);

struct GenerationTerm {
  int chart;
  std::size_t generator;
  std::size_t power;
};
struct IdalGeneration {
  std::vector<GenerationTerm> terms;
  GluedMorphism epi;  // direct sum of chart idal powers -> G
};
IdalGeneration idal_generation(const GluedModule& g, std::size_t n_max = 8);

struct DatumReport {
  std::vector<std::pair<std::string, bool>> clauses;
  bool holds() const;
};
// single-ring classification data
DatumReport projline_datum_check(const PresentedModule& l, const ModuleMap& s1, const ModuleMap& s2);
DatumReport doubleorigin_datum_check(const PresentedModule& l, const PresentedModule& lstar, const ModuleMap& s,
                                     const ModuleMap& t, const ModuleMap& pairing);
DatumReport doubleorigin2_datum_check(const Idal& j1, const Idal& j2, const ModuleMap& p);

struct LineBundleDatum {
  GluedModule l;
  GluedMorphism s1, s2;
};
DatumReport projline_datum_check(const LineBundleDatum& d, std::size_t n_max = 8);

struct DoubleOrigin2Datum {
  Idal j1, j2;
  ModuleMap p;
};
// J1 = O, J2 = <T1, T2>, p : O^2 -> J1 (x) J2 the generator surjection
DoubleOrigin2Datum doubleorigin2_canonical(const RingPtr& ring);

}  // namespace idalkit
