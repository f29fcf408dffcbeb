#include <gtest/gtest.h>

#include "nullkan/construct.hpp"

using namespace nullkan;

namespace {

Subset bit(std::size_t i) { return Subset{1} << i; }

std::size_t obj(const FinCategory& C, const std::string& id) { return C.object_index(id); }

struct Built {
  Setup s;
  Arrangement a;
  PipelineResult p;

  explicit Built(Setup setup) : s(std::move(setup)), a(arrange(s)), p(run_pipeline(a)) {}
  Built(const Built&) = delete;
};

} // namespace

// ---------------------------------------------------------------------------
// Assumptions

TEST(CheckAssumptions, BuiltinsPass) {
  for (const auto& name : builtin_model_names()) {
    auto r = check_assumptions(builtin_model(name));
    EXPECT_TRUE(r.ok()) << name;
  }
}

TEST(CheckAssumptions, BrokenRetractionFailsA3) {
  auto s = identity_model();
  s.pi = constant_functor(s.M, s.I, obj(*s.I, "P"), "pi");
  auto r = check_assumptions(s);
  EXPECT_FALSE(r.a3.ok());
  ASSERT_FALSE(r.a3.violations.empty());
  EXPECT_EQ(r.a3.violations.front().rule, "pi.j1=Id");
  EXPECT_NE(r.a3.violations.front().witness.find("Q"), std::string::npos);
}

TEST(CheckAssumptions, MissingRightInverseFailsA4) {
  auto s = f2_model(BaseKind::proper);
  s.iota3_rstar.reset();
  auto r = check_assumptions(s);
  EXPECT_TRUE(r.a1.ok() && r.a2.ok() && r.a3.ok());
  EXPECT_FALSE(r.a4.ok());
}

// ---------------------------------------------------------------------------
// Comma nullity

TEST(CommaNullity, F2TrivialProbeAvoidsItsPoint) {
  Built b(f2_model(BaseKind::trivial));
  const auto& P = *b.a.probes.cat;
  auto t0 = obj(P, "(F0,t0,F1)");
  auto t1 = obj(P, "(F0,t1,F1)");
  EXPECT_EQ(b.p.comma_null.nulls[t0], SubsetFamily::of({0, bit(1)}));
  EXPECT_EQ(b.p.comma_null.nulls[t1], SubsetFamily::of({0, bit(0)}));
}

TEST(CommaNullity, BijectionKeepsProperSubsets) {
  Built b(f2_model(BaseKind::proper));
  const auto& P = *b.a.probes.cat;
  auto s = obj(P, "(F1,s,F1)");
  EXPECT_EQ(b.p.comma_null.nulls[s], SubsetFamily::of({0, bit(0), bit(1)}));
}

TEST(CommaNullity, EmptyCarrierSourceGivesEverything) {
  Built b(injections_model(1));
  const auto& P = *b.a.probes.cat;
  for (std::size_t x = 0; x < P.object_count(); ++x) {
    const auto& o = b.a.probes.objects[x];
    if (o.a == obj(*b.s.B, "n0")) {
      auto n = b.s.gamma.set(o.b).size();
      EXPECT_EQ(b.p.comma_null.nulls[x], SubsetFamily::all(n)) << P.object_id(x);
    }
  }
}

// ---------------------------------------------------------------------------
// π_*

TEST(PiStar, IdentityModelIsBijectiveOnObjects) {
  Built b(identity_model());
  const auto& F = b.p.pi_star;
  EXPECT_EQ(F.source->object_count(), F.target->object_count());
  EXPECT_EQ(F.source->morphism_count(), F.target->morphism_count());
  for (std::size_t x = 0; x < F.source->object_count(); ++x)
    EXPECT_EQ(F.source->object_id(x), F.target->object_id(F.obj(x)));
}

TEST(PiStar, F2StripsTranslations) {
  Built b(f2_model(BaseKind::trivial));
  const auto& F = b.p.pi_star;
  auto z = obj(*F.target, "(F0,z,F1)");
  EXPECT_EQ(F.obj(obj(*F.source, "(F0,t0,F1)")), z);
  EXPECT_EQ(F.obj(obj(*F.source, "(F0,t1,F1)")), z);
  EXPECT_EQ(F.obj(obj(*F.source, "(F1,s,F1)")), obj(*F.target, "(F1,id_F1,F1)"));
}

// ---------------------------------------------------------------------------
// Probed and main nullity

TEST(ProbedNull, IdentityModelMatchesCommaNullity) {
  Built b(identity_model());
  for (std::size_t x = 0; x < b.p.comma_null.nulls.size(); ++x)
    EXPECT_EQ(b.p.probed_null.nulls[b.p.pi_star.obj(x)], b.p.comma_null.nulls[x]);
}

TEST(ProbedNull, F2TrivialPointProbeIsEmptyOnly) {
  Built b(f2_model(BaseKind::trivial));
  auto z = obj(*b.a.linear.cat, "(F0,z,F1)");
  EXPECT_EQ(b.p.probed_null.nulls[z], SubsetFamily::of({0}));
}

TEST(ProbedNull, F2ProperIdentityProbeIsProper) {
  Built b(f2_model(BaseKind::proper));
  auto id = obj(*b.a.linear.cat, "(F1,id_F1,F1)");
  EXPECT_EQ(b.p.probed_null.nulls[id], SubsetFamily::of({0, bit(0), bit(1)}));
}

TEST(MainNull, IdentityModelReturnsBase) {
  Built b(identity_model());
  EXPECT_EQ(b.p.main_null.nulls, b.s.base);
}

TEST(MainNull, F2TrivialIsEmptyOnly) {
  Built b(f2_model(BaseKind::trivial));
  for (const auto& n : b.p.main_null.nulls)
    EXPECT_EQ(n, SubsetFamily::of({0}));
}

TEST(MainNull, F2ProperIsProperSubsets) {
  Built b(f2_model(BaseKind::proper));
  const auto& M = *b.s.M;
  EXPECT_EQ(b.p.main_null.nulls[obj(M, "F0")], SubsetFamily::of({0}));
  EXPECT_EQ(b.p.main_null.nulls[obj(M, "F1")], SubsetFamily::of({0, bit(0), bit(1)}));
}

TEST(MainNull, IsANullityAssignment) {
  for (const auto& name : builtin_model_names()) {
    Built b(builtin_model(name));
    EXPECT_TRUE(check_nullity_assignment(b.p.main_null).ok()) << name;
  }
}

// ---------------------------------------------------------------------------
// Direct oracle

TEST(DirectPrevalence, Examples) {
  auto id = identity_model();
  EXPECT_EQ(direct_prevalence(id).nulls, bar_null(id.base_assignment()).nulls);
  for (const auto& n : direct_prevalence(f2_model(BaseKind::trivial)).nulls)
    EXPECT_EQ(n, SubsetFamily::of({0}));
  auto proper = direct_prevalence(f2_model(BaseKind::proper));
  EXPECT_EQ(proper.nulls[1], SubsetFamily::of({0, bit(0), bit(1)}));
}

TEST(DirectPrevalence, AgreesWithPipelineOnFieldModels) {
  for (const auto& name : {"identity", "f2_trivial", "f2_proper"}) {
    Built b(builtin_model(name));
    EXPECT_TRUE(oracle_diff(b.p.main_null, direct_prevalence(b.s)).ok()) << name;
  }
}

// Recorded disagreement: the fibre-wise Kan misses the union taken over non-identity
// comparisons that the direct formula admits.
TEST(DirectPrevalence, DisagreesOnInjections) {
  Built b(injections_model(1));
  EXPECT_FALSE(oracle_diff(b.p.main_null, direct_prevalence(b.s)).ok());
}

// ---------------------------------------------------------------------------
// Closure and saturation

TEST(BarNull, ContainsTheOriginal) {
  for (const auto& name : builtin_model_names()) {
    auto n = builtin_model(name).base_assignment();
    auto bar = bar_null(n);
    for (std::size_t x = 0; x < n.nulls.size(); ++x) {
      EXPECT_TRUE(n.nulls[x].subset_of(bar.nulls[x])) << name;
    }
  }
}

TEST(BarNull, TrivialBaseOnInjectionsGrows) {
  auto s = injections_model(0);
  auto bar = bar_null(s.base_assignment());
  auto n2 = obj(*s.M, "n2");
  EXPECT_TRUE(bar.nulls[n2].contains(bit(1)));
  EXPECT_FALSE(s.base[n2].contains(bit(1)));
}

TEST(Saturation, Examples) {
  EXPECT_TRUE(is_saturated(f2_model(BaseKind::proper).base_assignment()));
  EXPECT_FALSE(is_saturated(f2_model(BaseKind::trivial).base_assignment()));
  EXPECT_FALSE(is_saturated(injections_model(0).base_assignment()));
  auto C = discrete_category({"x", "y"}, "D");
  SetFunctor g{C, {carrier_of_size(2), carrier_of_size(1)}, {{0, 1}, {0}}};
  NullityAssignment n{g, {SubsetFamily::of({0, bit(1)}), SubsetFamily::of({0})}};
  EXPECT_TRUE(is_saturated(n));
}

TEST(Testability, Examples) {
  auto s = f2_model(BaseKind::proper);
  auto full = s.base_assignment();
  for (std::size_t x = 0; x < full.nulls.size(); ++x)
    full.nulls[x] = SubsetFamily::all(s.gamma.set(x).size());
  EXPECT_TRUE(is_testable(full, s, obj(*s.M, "F1")));
  Built b(f2_model(BaseKind::proper));
  EXPECT_TRUE(is_testable(b.p.main_null, b.s, obj(*b.s.M, "F1")));
}

// ---------------------------------------------------------------------------
// Theorem checks

TEST(Invariance, MainNullPassesEverywhere) {
  for (const auto& name : builtin_model_names()) {
    Built b(builtin_model(name));
    EXPECT_EQ(verify_invariance(b.p.main_null).verdict, Verdict::pass) << name;
  }
}

TEST(Invariance, TranslationBreaksHandBuiltAssignment) {
  auto s = f2_model(BaseKind::proper);
  NullityAssignment n{s.gamma, {SubsetFamily::of({0}), SubsetFamily::of({0, bit(0)})}};
  auto r = verify_invariance(n);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_EQ(r.report.violations.size(), 1u);
  EXPECT_EQ(r.report.violations[0].witness, "s maps {0} to {1}");
}

TEST(Invariance, IdentityOnlyCategoryPasses) {
  auto C = discrete_category({"x"}, "D");
  SetFunctor g{C, {carrier_of_size(2)}, {{0, 1}}};
  NullityAssignment n{g, {SubsetFamily::of({0, bit(0)})}};
  EXPECT_EQ(verify_invariance(n).verdict, Verdict::pass);
}

TEST(Minimality, F2TrivialPasses) {
  Built b(f2_model(BaseKind::trivial));
  auto r = verify_minimality(b.s, b.p.main_null, false);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_GT(r.examined, 0u);
}

TEST(Minimality, IdentityModelPasses) {
  Built b(identity_model());
  EXPECT_EQ(verify_minimality(b.s, b.p.main_null, false).verdict, Verdict::pass);
}

TEST(Minimality, EnlargedAssignmentFails) {
  Built b(f2_model(BaseKind::trivial));
  auto big = b.p.main_null;
  big.nulls[1] = SubsetFamily::all(2);
  EXPECT_EQ(verify_minimality(b.s, big, false).verdict, Verdict::fail);
}

TEST(Minimality, GuardStopsLargeCarriers) {
  auto C = discrete_category({"x"}, "D");
  nullkan::Setup s;
  s.B = s.I = s.M = C;
  s.gamma = {C, {carrier_of_size(5)}, {{0, 1, 2, 3, 4}}};
  NullityAssignment n{s.gamma, {SubsetFamily::of({0})}};
  auto r = verify_minimality(s, n, false);
  EXPECT_EQ(r.verdict, Verdict::guard_exceeded);
  EXPECT_EQ(r.examined, 0u);
}

TEST(Extension, IdentityModelPasses) {
  Built b(identity_model());
  auto r = verify_extension(b.a, b.p);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_TRUE(r.steps.ok());
}

TEST(Extension, F2ProperPasses) {
  Built b(f2_model(BaseKind::proper));
  EXPECT_EQ(verify_extension(b.a, b.p).verdict, Verdict::pass);
}

TEST(Extension, F2TrivialIsGated) {
  Built b(f2_model(BaseKind::trivial));
  auto r = verify_extension(b.a, b.p);
  EXPECT_EQ(r.verdict, Verdict::precondition_unmet);
  ASSERT_FALSE(r.report.violations.empty());
  EXPECT_EQ(r.report.violations[0].witness, "base nullity is not saturated");
}

// ---------------------------------------------------------------------------
// Properties

TEST(ConstructProperty, BarNullIsIdempotent) {
  for (const auto& name : builtin_model_names()) {
    auto s = builtin_model(name);
    Built b(builtin_model(name));
    for (const auto& n : {s.base_assignment(), b.p.main_null}) {
      auto once = bar_null(n);
      EXPECT_EQ(bar_null(once).nulls, once.nulls) << name;
    }
  }
}

TEST(ConstructProperty, ExtensionSquaresCommute) {
  for (const auto& name : builtin_model_names()) {
    Built b(builtin_model(name));
    auto r = verify_extension(b.a, b.p);
    for (const auto& v : r.steps.violations) {
      EXPECT_NE(v.rule, "square") << name << ": " << v.witness;
    }
  }
}
