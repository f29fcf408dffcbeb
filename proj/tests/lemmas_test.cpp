#include <gtest/gtest.h>

#include <map>

#include "nullkan/lemmas.hpp"

using namespace nullkan;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kInstances = 40;

std::map<std::string, Claim> claims_for(const std::string& model) {
  auto s = builtin_model(model);
  auto a = arrange(s);
  std::map<std::string, Claim> out;
  for (auto& c : check_null_ext5(a, Budget{1'000'000}))
    out[c.name] = c;
  return out;
}

void expect_accounted(const LemmaStats& st) {
  EXPECT_EQ(st.tried, kInstances) << st.name;
  EXPECT_EQ(st.verified + st.refuted + st.skipped, st.tried) << st.name;
  EXPECT_LE(st.verified + st.refuted, st.hypotheses_held) << st.name;
}

} // namespace

TEST(LemmaStats, RefuteKeepsThreeWitnesses) {
  LemmaStats st;
  for (int i = 0; i < 5; ++i)
    st.refute("w" + std::to_string(i));
  EXPECT_EQ(st.refuted, 5u);
  EXPECT_EQ(st.witnesses.size(), 3u);
  EXPECT_FALSE(st.passed(0));
}

TEST(LemmaStats, PassNeedsEnoughVerifications) {
  LemmaStats st;
  st.verified = 4;
  EXPECT_FALSE(st.passed(5));
  st.verified = 5;
  EXPECT_TRUE(st.passed(5));
}

TEST(InstanceGenerator, PosetsArePartialOrders) {
  InstanceGenerator gen(kSeed);
  for (int i = 0; i < 20; ++i) {
    auto P = gen.poset("p", 4);
    EXPECT_TRUE(validate_category(*P).ok());
    EXPECT_GE(P->object_count(), 2u);
    EXPECT_LE(P->object_count(), 4u);
    for (std::size_t f = 0; f < P->morphism_count(); ++f) {
      auto x = P->dom(f), y = P->cod(f);
      if (x != y) {
        EXPECT_FALSE(P->hom(y, x).size()) << "antisymmetry";
      }
    }
  }
}

TEST(InstanceGenerator, SameSeedSameInstances) {
  InstanceGenerator g1(7), g2(7);
  for (int i = 0; i < 5; ++i) {
    auto a = g1.poset("x"), b = g2.poset("x");
    EXPECT_EQ(a->object_count(), b->object_count());
    EXPECT_EQ(a->morphism_count(), b->morphism_count());
  }
}

TEST(InstanceGenerator, MonotoneMapsAreFunctors) {
  InstanceGenerator gen(kSeed);
  auto L = lemma_lattice();
  for (int i = 0; i < 10; ++i) {
    auto X = gen.poset("x", 3);
    auto f = gen.monotone(X, L, "f");
    ASSERT_TRUE(f.has_value());
    EXPECT_TRUE(check_functor(*f).ok());
  }
}

TEST(Preadj1, VerifiedWithoutRefutation) {
  auto st = check_preadj1(kSeed, kInstances);
  expect_accounted(st);
  EXPECT_TRUE(st.passed(5)) << st.verified << " verified, " << st.refuted << " refuted";
}

TEST(Preadj2, VerifiedWithoutRefutation) {
  auto st = check_preadj2(kSeed, kInstances);
  expect_accounted(st);
  EXPECT_TRUE(st.passed(5)) << st.verified << " verified, " << st.refuted << " refuted";
}

TEST(KanId2, VerifiedWithoutRefutation) {
  auto st = check_kan_id2(kSeed, kInstances);
  expect_accounted(st);
  EXPECT_TRUE(st.passed(5)) << st.verified << " verified, " << st.refuted << " refuted";
}

// Random instances find counterexamples to the composite identities.
TEST(KanId3, RefutationsCarryWitnesses) {
  auto st = check_kan_id3(kSeed, kInstances);
  expect_accounted(st);
  EXPECT_GE(st.verified, 5u);
  EXPECT_EQ(st.witnesses.size(), std::min<std::size_t>(st.refuted, 3));
}

TEST(KanId4, RefutationsCarryWitnesses) {
  auto st = check_kan_id4(kSeed, kInstances);
  expect_accounted(st);
  EXPECT_EQ(st.witnesses.size(), std::min<std::size_t>(st.refuted, 3));
}

TEST(LemmaChecks, DeterministicPerSeed) {
  auto a = check_kan_id3(kSeed, 10), b = check_kan_id3(kSeed, 10);
  EXPECT_EQ(a.verified, b.verified);
  EXPECT_EQ(a.refuted, b.refuted);
  EXPECT_EQ(a.witnesses, b.witnesses);
}

TEST(NullExt5, IdentityModelHoldsThroughout) {
  for (const auto& [name, c] : claims_for("identity")) {
    EXPECT_TRUE(c.holds) << name << ": " << c.detail;
  }
}

TEST(NullExt5, F2ForgetfulClaimsHold) {
  for (const auto* model : {"f2_trivial", "f2_proper"}) {
    auto cs = claims_for(model);
    EXPECT_TRUE(cs.at("Forget2 right inverse").holds) << model;
    EXPECT_TRUE(cs.at("Forget2 pre-right adjoint").holds) << model;
    EXPECT_TRUE(cs.at("iota2 post-right adjoint (iota3_rstar . iota7)").holds) << model;
  }
}

// Two affine lifts of the point probe share one linear part, and no section of π_* can
// pick one of them compatibly with the translation s.
TEST(NullExt5, F2HasNoSectionOfPiStar) {
  for (const auto* model : {"f2_trivial", "f2_proper"}) {
    auto cs = claims_for(model);
    const auto& built = cs.at("pi_star right inverse (constructed)");
    EXPECT_FALSE(built.holds) << model;
    EXPECT_NE(built.detail.find("t1"), std::string::npos) << built.detail;
    const auto& searched = cs.at("pi_star right inverse (exhaustive)");
    EXPECT_FALSE(searched.holds) << model;
    EXPECT_EQ(searched.detail, "no functor G with pi_star . G = Id");
  }
}

TEST(NullExt5, F2CompositeTrianglesFail) {
  auto cs = claims_for("f2_proper");
  EXPECT_FALSE(cs.at("iota1 pre-right adjoint (iota3_rstar . iota4)").holds);
  EXPECT_FALSE(cs.at("triangle iota5 . iota4 = Id").holds);
  EXPECT_FALSE(cs.at("triangle iota6 . iota7 = Id").holds);
  EXPECT_EQ(cs.at("triangle iota5 . iota4 = Id").detail, "no equality iota5 . iota4 = Id");
}

TEST(NullExt5, MissingRightInverseIsReported) {
  auto s = f2_model(BaseKind::proper);
  s.iota3_rstar.reset();
  auto a = arrange(s);
  auto cs = check_null_ext5(a);
  ASSERT_FALSE(cs.empty());
  EXPECT_EQ(cs.back().name, "iota3_rstar");
  EXPECT_FALSE(cs.back().holds);
}
