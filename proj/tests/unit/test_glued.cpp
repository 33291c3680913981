#include <gtest/gtest.h>

#include <random>

#include "idalkit/glued.hpp"

using namespace idalkit;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

ModuleMap identity_of(const PresentedModule& s, const PresentedModule& t) {
  ModuleMap f{s, t, {}};
  for (std::size_t i = 0; i < s.gens(); ++i) f.matrix.push_back(unit_column(*s.ring(), t.gens(), i));
  return f;
}

GluedMorphism identity_glued(const GluedModule& a, const GluedModule& b) {
  return {a, b, identity_of(a.m1, b.m1), identity_of(a.m2, b.m2)};
}

// t^k with 0 <= k and s^(n-k) regular on the other chart
std::size_t monomial_count(long n) {
  std::size_t c = 0;
  for (long k = 0; k <= n; ++k)
    if (n - k >= 0) ++c;
  return c;
}

PresentedModule cyclic(const RingPtr& r, const std::string& rel) {
  return PresentedModule(r, 1, {{r->parse(rel)}});
}

}  // namespace

TEST(Scheme, ProjectiveLineTransitions) {
  auto p1 = projective_line();
  ASSERT_TRUE(p1->affine());
  const auto& a = p1->aff();
  EXPECT_EQ(a.o1.ring->format(a.to1.images[0]), "t");
  EXPECT_EQ(a.o1.ring->format(a.to1.images[1]), "u");
  EXPECT_EQ(a.o2.ring->format(a.to2.images[0]), "s");
  EXPECT_EQ(a.o2.ring->format(a.to2.images[1]), "v");
}

TEST(Scheme, TransitionMustInvert) {
  auto a1 = PolyRing::make(Field{}, {"t"}), a2 = PolyRing::make(Field{}, {"s"});
  EXPECT_THROW(affine_scheme("bad", a1, "t", "u", a2, "s-1", "v", {"t"}, {"s"}), Error);
  EXPECT_NO_THROW(affine_scheme("doubled", a1, "t", "u", a2, "s", "v", {"t"}, {"s"}));
}

TEST(Glue, StructureSheafEverywhere) {
  EXPECT_NO_THROW(structure_sheaf(projective_line()));
  EXPECT_NO_THROW(structure_sheaf(double_origin(1)));
  EXPECT_NO_THROW(structure_sheaf(double_origin(2)));
}

TEST(Glue, SerreTwistTransitions) {
  auto g = p1_standard(1);
  EXPECT_EQ(g.scheme->aff().o1.ring->format(g.tau.matrix[0][0]), "t");
  auto h = p1_standard(-1);
  EXPECT_EQ(h.scheme->aff().o1.ring->format(h.tau.matrix[0][0]), "u");
  auto o = p1_standard(0);
  EXPECT_EQ(o.scheme->aff().o1.ring->format(o.tau.matrix[0][0]), "1");
}

TEST(Glue, NonUnitOverlapRejected) {
  auto a1 = PolyRing::make(Field{}, {"t"}), a2 = PolyRing::make(Field{}, {"t"});
  auto s = affine_scheme("line-over-itself", a1, "1", "u", a2, "1", "v", {"t"}, {"t"});
  auto t = s->aff().o1.ring->parse("t");
  auto msg = error_of([&] { glue(s, unit_module(a1), unit_module(a2), {{t}}, std::nullopt); });
  EXPECT_EQ(msg, "tau not invertible");
  auto msg2 = error_of([&] { glue(s, unit_module(a1), unit_module(a2), {{t}}, std::vector<Column>{{t}}); });
  EXPECT_EQ(msg2, "tau not invertible");
}

TEST(Glue, IllDefinedTau) {
  auto p1 = projective_line();
  auto one = p1->aff().o1.ring->one();
  auto msg = error_of([&] {
    glue(p1, unit_module(p1->chart1), cyclic(p1->chart2, "s"), {{one}}, std::vector<Column>{{one}});
  });
  EXPECT_EQ(msg, "tau not well-defined");
}

TEST(Glue, InverseComputedWhenMissing) {
  auto p1 = projective_line();
  auto t = p1->aff().o1.ring->parse("t^2");
  auto g = glue(p1, unit_module(p1->chart1), unit_module(p1->chart2), {{t}}, std::nullopt);
  EXPECT_EQ(g.scheme->aff().o1.ring->format(g.tau_inv.matrix[0][0]), "u^2");
}

TEST(Glue, SelfGlueNeedsInverse) {
  auto s = double_origin(1);
  auto o = unit_module(s->chart1);
  EXPECT_EQ(error_of([&] { glue(s, o, o, {{s->chart1->one()}}, std::nullopt); }), "tau inverse required");
}

TEST(Sections, SerreTwistsMatchMonomialCount) {
  for (long n = -3; n <= 5; ++n) {
    auto r = global_sections(p1_standard(n), 6);
    EXPECT_EQ(r.total, monomial_count(n)) << "n = " << n;
    EXPECT_EQ(r.total, static_cast<std::size_t>(std::max(n + 1, 0L)));
  }
}

TEST(Sections, SkyscraperHasOneSection) {
  auto p1 = projective_line();
  auto m1 = cyclic(p1->chart1, "t");
  auto z = free_module(p1->chart2, 0);
  auto g = glue(p1, m1, z, std::vector<Column>{}, std::vector<Column>{Column{}});
  EXPECT_EQ(global_sections(g, 4).total, 1u);
}

TEST(Sections, LeftExactOnSplitSequences) {
  for (long a = -2; a <= 3; ++a)
    for (long b = -2; b <= 3; ++b) {
      auto s = direct_sum_glued(p1_standard(a), p1_standard(b));
      EXPECT_EQ(global_sections(s, 6).total,
                global_sections(p1_standard(a), 6).total + global_sections(p1_standard(b), 6).total);
    }
}

TEST(Sections, DoubleOriginPlaneIsPlane) {
  auto s = double_origin(2);
  auto r = global_sections(structure_sheaf(s), 4);
  ASSERT_TRUE(r.module.has_value());
  auto o = unit_module(s->chart1);
  ASSERT_EQ(r.per_degree.size(), 9u);
  for (const auto& [d, dim] : r.per_degree) EXPECT_EQ(dim, graded_dim(o, d)) << "degree " << d;
}

TEST(Sections, DoubleOriginLineIsLine) {
  auto s = double_origin(1);
  auto r = global_sections(structure_sheaf(s), 4);
  ASSERT_TRUE(r.module.has_value());
  EXPECT_EQ(r.module->gens(), 1u);
  EXPECT_TRUE(r.module->relations().empty());
}

TEST(TensorGlued, UnitIsNeutral) {
  auto g = p1_standard(2);
  auto t = tensor_glued(g, structure_sheaf(g.scheme));
  EXPECT_TRUE(is_glued_iso(identity_glued(t, g)));
}

TEST(TensorGlued, SerreTwistGroupLaw) {
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      auto t = tensor_glued(p1_standard(a), p1_standard(b));
      EXPECT_TRUE(is_glued_iso(identity_glued(t, p1_standard(a + b)))) << a << " + " << b;
    }
}

TEST(TensorGlued, WrongTwistIsNotIsomorphic) {
  auto t = tensor_glued(p1_standard(1), p1_standard(1));
  EXPECT_FALSE(is_glued_morphism(identity_glued(t, p1_standard(1))));
}

TEST(HomGlued, DualOfTwist) {
  auto h = hom_glued(p1_standard(1), p1_standard(0));
  EXPECT_TRUE(is_glued_iso(identity_glued(h, p1_standard(-1))));
}

TEST(HomGlued, SelfGlueUnit) {
  auto s = double_origin(2);
  auto o = structure_sheaf(s);
  auto h = hom_glued(o, o);
  EXPECT_TRUE(is_glued_iso(identity_glued(h, o)));
}

TEST(Invertible, SerreTwists) {
  for (long n = -3; n <= 3; ++n) {
    auto r = invertible_check(p1_standard(n));
    ASSERT_TRUE(r.holds()) << n;
    EXPECT_TRUE(is_glued_iso(identity_glued(*r.inverse, p1_standard(-n))));
  }
}

TEST(Invertible, StructureSheafSelfDual) {
  for (auto s : {projective_line(), double_origin(1)}) {
    auto o = structure_sheaf(s);
    auto r = invertible_check(o);
    ASSERT_TRUE(r.holds());
    EXPECT_TRUE(is_glued_iso(identity_glued(*r.inverse, o)));
    EXPECT_TRUE(symtrivial_check(o));
  }
}

TEST(Invertible, RankTwoIsDualizableOnly) {
  auto p1 = projective_line();
  auto g = direct_sum_glued(p1_standard(0), p1_standard(0));
  EXPECT_FALSE(invertible_check(g).holds());
  EXPECT_FALSE(symtrivial_check(g));
  auto o = structure_sheaf(p1);
  auto gd = tensor_glued(g, g), dg = gd;
  auto coev = [&](const RingPtr& r) {
    return Column{r->one(), r->zero(), r->zero(), r->one()};
  };
  GluedMorphism unit{o, gd, ModuleMap{o.m1, gd.m1, {coev(p1->chart1)}}, ModuleMap{o.m2, gd.m2, {coev(p1->chart2)}}};
  auto ev = [&](const RingPtr& r) {
    std::vector<Column> m;
    for (auto c : coev(r)) m.push_back(Column{c});
    return m;
  };
  GluedMorphism counit{dg, o, ModuleMap{dg.m1, o.m1, ev(p1->chart1)}, ModuleMap{dg.m2, o.m2, ev(p1->chart2)}};
  EXPECT_TRUE(dualizable_check(g, g, unit, counit));
  GluedMorphism bad = counit;
  bad.g1.matrix[3] = Column{p1->chart1->parse("2")};
  EXPECT_FALSE(dualizable_check(g, g, unit, bad));
}

TEST(Invertible, ChartwiseCriterion) {
  auto p1 = projective_line();
  auto m1 = cyclic(p1->chart1, "t");
  auto z = free_module(p1->chart2, 0);
  auto g = glue(p1, m1, z, std::vector<Column>{}, std::vector<Column>{Column{}});
  auto r = invertible_check(g);
  EXPECT_FALSE(r.chart1);
  EXPECT_FALSE(r.chart2);
  EXPECT_FALSE(r.holds());
}

TEST(Roundtrip, IdentityIdal) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto r = roundtrip_check(identity_idal(a), principal_idal(a, a->parse("x")), unit_module(a), 4, 3);
  EXPECT_TRUE(r.holds());
}

TEST(Roundtrip, PrincipalCoverOfLine) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto i = principal_idal(a, a->parse("x")), j = principal_idal(a, a->parse("x-1"));
  auto r = roundtrip_check(i, j, unit_module(a), 4, 3);
  EXPECT_TRUE(r.holds());
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.regluing.has_value());
}

TEST(Roundtrip, SkyscrapersSurviveOnOneChart) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto i = principal_idal(a, a->parse("x")), j = principal_idal(a, a->parse("x-1"));
  auto m = direct_sum(cyclic(a, "x"), cyclic(a, "x-1")).module;
  auto r = roundtrip_check(i, j, m, 6, 3);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(r.holds());
}

TEST(Roundtrip, RequiresCover) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto i = principal_idal(a, a->parse("x"));
  EXPECT_EQ(error_of([&] { roundtrip_check(i, i, unit_module(a), 3, 2); }), "cover check fails");
}

TEST(Roundtrip, RandomModulesOverLine) {
  std::mt19937 rng(7);
  auto a = PolyRing::make(Field{}, {"x"});
  auto i = principal_idal(a, a->parse("x")), j = principal_idal(a, a->parse("x-1"));
  std::uniform_int_distribution<int> c(-2, 2), deg(0, 2), gens(1, 2);
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t g = static_cast<std::size_t>(gens(rng));
    std::vector<Column> rels;
    for (std::size_t k = 0; k < g; ++k) {
      Column col;
      for (std::size_t e = 0; e < g; ++e) {
        Poly p;
        for (int d = deg(rng); d >= 0; --d) p = a->add(p, a->mul(a->constant(Coeff(c(rng))), a->pow(a->var(0), d)));
        col.push_back(p);
      }
      rels.push_back(col);
    }
    PresentedModule m(a, g, rels);
    EXPECT_TRUE(roundtrip_check(i, j, m, 3, 2).holds()) << "trial " << trial;
  }
}

TEST(Generation, StructureSheafIsIdentity) {
  auto g = idal_generation(structure_sheaf(projective_line()));
  ASSERT_EQ(g.terms.size(), 1u);
  EXPECT_EQ(g.terms[0].power, 0u);
  EXPECT_TRUE(is_iso(g.epi.g1));
  EXPECT_TRUE(is_iso(g.epi.g2));
}

TEST(Generation, SerreTwists) {
  for (long n = -2; n <= 2; ++n) {
    auto g = idal_generation(p1_standard(n));
    EXPECT_TRUE(is_surjective(g.epi.g1) && is_surjective(g.epi.g2)) << n;
    EXPECT_TRUE(is_glued_morphism(g.epi));
  }
  auto neg = idal_generation(p1_standard(-2));
  ASSERT_EQ(neg.terms.size(), 1u);
  EXPECT_EQ(neg.terms[0].power, 2u);
}

TEST(Generation, Skyscrapers) {
  auto p1 = projective_line();
  auto z1 = free_module(p1->chart1, 0), z2 = free_module(p1->chart2, 0);
  auto one = p1->aff().o1.ring->one();
  std::vector<GluedModule> mods{
      glue(p1, cyclic(p1->chart1, "t"), z2, std::vector<Column>{}, std::vector<Column>{Column{}}),
      glue(p1, z1, cyclic(p1->chart2, "s"), std::vector<Column>{Column{}}, std::vector<Column>{}),
      glue(p1, cyclic(p1->chart1, "t-1"), cyclic(p1->chart2, "s-1"), {{one}}, std::vector<Column>{{one}}),
  };
  for (const auto& m : mods) {
    auto g = idal_generation(m);
    for (const auto& t : g.terms) EXPECT_LE(t.power, 1u);
    EXPECT_TRUE(is_surjective(g.epi.g1) && is_surjective(g.epi.g2));
  }
}

TEST(Generation, DoubleOrigin) {
  auto s = double_origin(1);
  auto g = idal_generation(structure_sheaf(s));
  EXPECT_TRUE(is_surjective(g.epi.g1) && is_surjective(g.epi.g2));
  auto c = chart_idal(s, 2);
  auto h = idal_generation(c.carrier);
  EXPECT_TRUE(is_surjective(h.epi.g1) && is_surjective(h.epi.g2));
}

TEST(ChartIdals, AreGluedIdals) {
  for (auto s : {projective_line(), double_origin(1), double_origin(2)})
    for (int c : {1, 2}) {
      auto ci = chart_idal(s, c);
      EXPECT_TRUE(is_glued_morphism(ci.e));
      EXPECT_TRUE(idal_check(ci.e.g1) && idal_check(ci.e.g2));
    }
  auto i1 = chart_idal(projective_line(), 1);
  EXPECT_TRUE(is_glued_iso(identity_glued(i1.carrier, p1_standard(-1))));
}

TEST(Datum, ProjectiveLineTrivial) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto o = unit_module(a);
  ModuleMap one{o, o, {{a->one()}}};
  EXPECT_TRUE(projline_datum_check(o, one, one).holds());
  ModuleMap x{o, o, {{a->parse("x")}}};
  auto r = projline_datum_check(o, x, x);
  EXPECT_FALSE(r.holds());
  EXPECT_FALSE(r.clauses.back().second);
}

TEST(Datum, ProjectiveLineGlued) {
  auto p1 = projective_line();
  auto i1 = chart_idal(p1, 1), i2 = chart_idal(p1, 2);
  GluedMorphism s2{i1.carrier, i2.e.target, i2.e.g1, i2.e.g2};
  LineBundleDatum d{i1.carrier, i1.e, s2};
  EXPECT_TRUE(projline_datum_check(d).holds());
}

TEST(Datum, DoubleOriginLine) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto o = unit_module(a);
  ModuleMap s{o, o, {{a->parse("x")}}}, t{o, o, {{a->parse("1-x")}}}, pair{tensor(o, o), o, {{a->one()}}};
  EXPECT_TRUE(doubleorigin_datum_check(o, o, s, t, pair).holds());
  ModuleMap bad{tensor(o, o), o, {{a->parse("x")}}};
  EXPECT_FALSE(doubleorigin_datum_check(o, o, s, t, bad).holds());
}

TEST(Datum, DoubleOriginPlaneCanonical) {
  auto a = PolyRing::make(Field{}, {"T1", "T2"});
  auto d = doubleorigin2_canonical(a);
  auto r = doubleorigin2_datum_check(d.j1, d.j2, d.p);
  EXPECT_TRUE(r.holds());
  // kernel of (T1, T2) is generated by (T2, -T1)
  auto o2 = free_module(a, 2);
  auto k = kernel(ModuleMap{o2, unit_module(a), {{a->parse("T1")}, {a->parse("T2")}}});
  Lifter l(*a, 2, {Column{a->parse("T2"), a->parse("-T1")}}, {});
  for (const auto& c : k.incl.matrix) EXPECT_TRUE(l.lift(c).has_value());
}

TEST(Datum, DoubleOriginPlaneWithoutCover) {
  auto a = PolyRing::make(Field{}, {"T1", "T2"});
  auto d = doubleorigin2_canonical(a);
  Idal prod = idal_product(d.j2, d.j2);
  ModuleMap p{free_module(a, 2), prod.carrier, {}};
  auto r = doubleorigin2_datum_check(d.j2, d.j2, p);
  EXPECT_FALSE(r.clauses[0].second);
}

TEST(Datum, DoubleOriginPlaneOneVariable) {
  auto a = PolyRing::make(Field{}, {"x"});
  auto j1 = principal_idal(a, a->parse("x")), j2 = principal_idal(a, a->parse("x-1"));
  Idal prod = idal_product(j1, j2);
  ModuleMap p{free_module(a, 2), prod.carrier, {{a->one()}, {a->zero()}}};
  auto r = doubleorigin2_datum_check(j1, j2, p);
  EXPECT_TRUE(r.clauses[0].second);
  EXPECT_FALSE(r.clauses.back().second);
  EXPECT_FALSE(r.holds());
}
