#include <gtest/gtest.h>

#include <random>

#include "nullkan/fincat.hpp"

using namespace nullkan;

namespace {

CatRef two_chain() { return build_chain({"0", "1"}, "2"); }

CatRef antichain() { return build_preorder({"x", "y"}, {{"x", "x"}, {"y", "y"}}, "A2"); }

// a ⇉ b → c with u, v parallel and w∘u ≠ w∘v.
CatRef fork_category() {
  CategoryBuilder b("fork");
  auto a = b.add_object_with_identity("a");
  auto bb = b.add_object_with_identity("b");
  auto c = b.add_object_with_identity("c");
  auto u = b.add_morphism("u", a, bb);
  auto v = b.add_morphism("v", a, bb);
  auto w = b.add_morphism("w", bb, c);
  auto p = b.add_morphism("wu", a, c);
  auto q = b.add_morphism("wv", a, c);
  b.fill_identity_composites();
  b.set_composite(w, u, p);
  b.set_composite(w, v, q);
  return std::move(b).build_shared();
}

FunctorData swap_functor(const CatRef& C) {
  auto F = identity_functor(C, "swap");
  for (auto& m : F.mor_map)
    if (m == C->morphism_index("x<=x"))
      m = C->morphism_index("y<=y");
    else if (m == C->morphism_index("y<=y"))
      m = C->morphism_index("x<=x");
  F.obj_map = {1, 0};
  return F;
}

} // namespace

TEST(ValidateCategory, OneObjectIdentityOnly) {
  EXPECT_TRUE(validate_category(*terminal_category()).ok());
}

TEST(ValidateCategory, TwoChainIsValid) {
  auto C = two_chain();
  EXPECT_EQ(C->object_count(), 2u);
  EXPECT_EQ(C->morphism_count(), 3u);
  EXPECT_TRUE(validate_category(*C).ok());
}

TEST(ValidateCategory, RemappedIdentityCompositeIsCaught) {
  auto C = two_chain();
  auto f = C->morphism_index("0<=1");
  auto id1 = C->morphism_index("1<=1");
  auto bad = C->with_composite(id1, f, id1);
  auto r = validate_category(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has_rule("composite-hom") || r.has_rule("identity-law-left"));
  bool names_f = false;
  for (const auto& v : r.violations)
    names_f = names_f || v.witness.find("0<=1") != std::string::npos;
  EXPECT_TRUE(names_f);
}

TEST(ValidateCategory, MissingCompositeIsCaught) {
  CategoryBuilder b("partial");
  auto x = b.add_object_with_identity("x");
  auto y = b.add_object_with_identity("y");
  auto f = b.add_morphism("f", x, y);
  b.set_composite(f, b.morphism("id_x"), f);
  auto r = validate_category(std::move(b).build());
  EXPECT_TRUE(r.has_rule("composition-totality"));
  (void)y;
}

TEST(BuildPreorder, Counts) {
  auto one = build_preorder({"a"}, {{"a", "a"}});
  EXPECT_EQ(one->object_count(), 1u);
  EXPECT_EQ(one->morphism_count(), 1u);
  auto chain = build_chain({"a", "b", "c"});
  EXPECT_EQ(chain->object_count(), 3u);
  EXPECT_EQ(chain->morphism_count(), 6u);
  auto anti = antichain();
  EXPECT_EQ(anti->object_count(), 2u);
  EXPECT_EQ(anti->morphism_count(), 2u);
  for (const auto& c : {one, chain, anti}) {
    EXPECT_TRUE(validate_category(*c).ok());
  }
}

TEST(BuildPreorder, RejectsNonReflexive) {
  EXPECT_THROW(build_preorder({"a", "b"}, {{"a", "a"}}), InputError);
}

TEST(BuildPreorder, RejectsNonTransitive) {
  try {
    build_preorder({"a", "b", "c"},
                   {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}});
    FAIL() << "accepted a non-transitive relation";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("(a,c)"), std::string::npos);
  }
}

TEST(PowerSetPreorder, CountsAreThreeToTheN) {
  const std::vector<std::vector<std::string>> sets = {{}, {"p", "q"}, {"p", "q", "r"}};
  const std::size_t objects[] = {1, 4, 8};
  const std::size_t morphisms[] = {1, 9, 27};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto C = power_set_preorder(sets[i]);
    EXPECT_EQ(C->object_count(), objects[i]);
    EXPECT_EQ(C->morphism_count(), morphisms[i]);
    EXPECT_TRUE(validate_category(*C).ok());
  }
}

TEST(PowerSetPreorder, BoundExceeded) {
  EXPECT_THROW(power_set_preorder({"1", "2", "3", "4", "5", "6"}), GuardExceeded);
}

TEST(CheckFunctor, IdentityAndConstant) {
  auto C = build_chain({"a", "b", "c"});
  EXPECT_TRUE(check_functor(identity_functor(C)).ok());
  EXPECT_TRUE(check_functor(constant_functor(C, C, 1)).ok());
}

TEST(CheckFunctor, SwappingParallelMorphismsBreaksComposition) {
  auto C = fork_category();
  ASSERT_TRUE(validate_category(*C).ok());
  auto F = identity_functor(C, "swap_uv");
  std::swap(F.mor_map[C->morphism_index("u")], F.mor_map[C->morphism_index("v")]);
  auto r = check_functor(F);
  EXPECT_TRUE(r.has_rule("functor-composition"));
}

TEST(CheckNatural, IdentityTransformation) {
  auto C = build_chain({"a", "b"});
  auto F = identity_functor(C);
  NatTransData eta{F, F, {C->identity(0), C->identity(1)}};
  EXPECT_TRUE(check_natural(eta).ok());
}

TEST(CheckNatural, PreorderSquaresCommute) {
  auto C = build_chain({"a", "b", "c"});
  auto F = constant_functor(C, C, 0);
  auto G = identity_functor(C);
  NatTransData eta{F, G, {}};
  for (std::size_t x = 0; x < 3; ++x)
    eta.components.push_back(C->hom(0, x).front());
  EXPECT_TRUE(check_natural(eta).ok());
}

TEST(CheckNatural, WrongHomSetIsPrecondition) {
  auto C = build_chain({"a", "b"});
  auto F = identity_functor(C);
  NatTransData eta{F, F, {C->morphism_index("a<=b"), C->identity(1)}};
  EXPECT_TRUE(check_natural(eta).has_rule("precondition"));
}

TEST(Colimit, IdentityDiagramGivesTerminal) {
  auto C = build_chain({"a", "b", "c"});
  auto c = colimit(identity_functor(C));
  ASSERT_TRUE(c);
  EXPECT_EQ(C->object_id(c->tip), "c");
  auto l = limit(identity_functor(C));
  ASSERT_TRUE(l);
  EXPECT_EQ(C->object_id(l->tip), "a");
}

TEST(Colimit, JoinAndMeetInPowerSet) {
  auto P = power_set_preorder({"p", "q"});
  auto J = discrete_category({"i", "j"});
  FunctorData D{J, P, {P->object_index("{p}"), P->object_index("{q}")}, {}, "D"};
  D.mor_map = {P->identity(D.obj_map[0]), P->identity(D.obj_map[1])};
  ASSERT_TRUE(check_functor(D).ok());
  auto c = colimit(D);
  ASSERT_TRUE(c);
  EXPECT_EQ(P->object_id(c->tip), "{p,q}");
  auto l = limit(D);
  ASSERT_TRUE(l);
  EXPECT_EQ(P->object_id(l->tip), "{}");
}

TEST(Colimit, EmptyDiagramWithoutInitialIsAbsent) {
  auto A = antichain();
  CategoryBuilder b("0");
  auto E = std::move(b).build_shared();
  FunctorData D{E, A, {}, {}, "empty"};
  EXPECT_FALSE(colimit(D));
  EXPECT_FALSE(limit(D));
}

TEST(Adjoints, IdentityIsBoth) {
  auto C = build_chain({"0", "1"});
  auto I = identity_functor(C);
  EXPECT_TRUE(check_pre_right_adjoint(I, I));
  EXPECT_TRUE(check_post_right_adjoint(I, I));
}

TEST(Adjoints, ConstantsOnTheTwoChain) {
  auto C = two_chain();
  auto I = identity_functor(C);
  EXPECT_TRUE(check_pre_right_adjoint(I, constant_functor(C, C, 0)));
  EXPECT_TRUE(check_post_right_adjoint(I, constant_functor(C, C, 1)));
  EXPECT_FALSE(check_pre_right_adjoint(I, constant_functor(C, C, 1)));
}

TEST(Adjoints, SwapOnAntichainIsNeither) {
  auto A = antichain();
  auto I = identity_functor(A);
  auto S = swap_functor(A);
  ASSERT_TRUE(check_functor(S).ok());
  EXPECT_FALSE(check_pre_right_adjoint(I, S));
  EXPECT_FALSE(check_post_right_adjoint(I, S));
}

TEST(Budget, SearchAbortsWhenExhausted) {
  auto P = power_set_preorder({"p", "q", "r"});
  Budget b{10};
  EXPECT_THROW(enumerate_functors(P, P, [](const FunctorData&) { return true; }, b),
               BudgetExceeded);
}

// Properties

TEST(FincatProperty, PreorderHomSetsAreThin) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::string> els = {"a", "b", "c", "d"};
    std::vector<char> rel(16, 0);
    for (int i = 0; i < 4; ++i)
      rel[i * 4 + i] = 1;
    for (int k = 0; k < 4; ++k)
      rel[rng() % 16] = 1;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (rel[i * 4 + k] && rel[k * 4 + j])
            rel[i * 4 + j] = 1;
    std::vector<std::pair<std::string, std::string>> leq;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (rel[i * 4 + j])
          leq.emplace_back(els[i], els[j]);
    auto C = build_preorder(els, leq);
    EXPECT_TRUE(C->is_thin());
    EXPECT_TRUE(validate_category(*C).ok());
  }
}

TEST(FincatProperty, UniversalConesAreUniqueUpToIso) {
  auto P = power_set_preorder({"p", "q"});
  auto J = discrete_category({"i", "j"});
  for (std::size_t x = 0; x < P->object_count(); ++x)
    for (std::size_t y = 0; y < P->object_count(); ++y) {
      FunctorData D{J, P, {x, y}, {P->identity(x), P->identity(y)}, "D"};
      auto c = colimit(D);
      ASSERT_TRUE(c);
      // every cocone tip with a comparison both ways to the returned tip is isomorphic to it
      for (std::size_t z = 0; z < P->object_count(); ++z) {
        if (!P->hom(c->tip, z).empty() && !P->hom(z, c->tip).empty()) {
          EXPECT_TRUE(find_isomorphism(*P, c->tip, z));
        }
      }
    }
}

TEST(FincatProperty, ComposedFunctorsAreFunctors) {
  auto C = build_chain({"a", "b", "c"});
  Budget b;
  std::vector<FunctorData> all;
  enumerate_functors(C, C, [&](const FunctorData& F) { all.push_back(F); return true; }, b);
  EXPECT_EQ(all.size(), 10u);  // monotone maps of a 3-chain
  for (const auto& F : all) {
    for (const auto& G : all) {
      EXPECT_TRUE(check_functor(compose(G, F)).ok());
    }
  }
}
