#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nullkan/construct.hpp"
#include "nullkan/spec.hpp"

using namespace nullkan;

namespace {

std::string read_spec(const std::string& file) {
  std::ifstream in(std::string(NULLKAN_SPECS_DIR) + "/" + file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kChain = R"(nullkan-spec 1
category C
  object a
  object b
  morphism id_a a a
  morphism id_b b b
  morphism f a b
  identity a id_a
  identity b id_b
end
functor Id C C
  obj a a
  obj b b
  mor id_a id_a
  mor id_b id_b
  mor f f
end
carriers g C
  set a 0
  set b 0 1
  map id_a 0
  map id_b 0 1
  map f 0
end
nullity n C
  at a {}
  at b {} {1}
end
setup chain
  B C
  I C
  M C
  j2 Id
  j1 Id
  pi Id
  gamma g
  base n
end
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

ParseError parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError(0, "", "");
}

} // namespace

TEST(SpecParse, ReadsAHandWrittenSetup) {
  auto doc = parse_spec(kChain);
  EXPECT_EQ(doc.version, 1);
  ASSERT_EQ(doc.categories.size(), 1u);
  EXPECT_EQ(doc.categories[0]->morphism_count(), 3u);
  ASSERT_TRUE(doc.setup.has_value());
  EXPECT_EQ(doc.setup->name, "chain");
  auto s = to_setup(doc);
  EXPECT_TRUE(check_assumptions(s).a1.ok());
  EXPECT_TRUE(check_assumptions(s).a2.ok());
  EXPECT_EQ(s.base[1], SubsetFamily::of({0, Subset{1} << 1}));
}

TEST(SpecParse, CommentsAndBlankLinesAreIgnored) {
  auto text = replace(kChain, "category C\n", "# leading comment\n\ncategory C  # trailing\n");
  EXPECT_EQ(parse_spec(text), parse_spec(kChain));
}

TEST(SpecParse, ModelShortcut) {
  auto doc = parse_spec("nullkan-spec 1\nmodel f2_proper\n");
  ASSERT_TRUE(doc.model.has_value());
  auto s = to_setup(doc);
  EXPECT_EQ(s.name, "f2_proper");
  EXPECT_EQ(s.base, builtin_model("f2_proper").base);
}

TEST(SpecParse, BareShortcutNeedsNoHeader) {
  EXPECT_EQ(to_setup(parse_spec("model: f2_proper\n")).name, "f2_proper");
}

TEST(SpecErrors, HeaderAfterContent) {
  auto e = parse_error("model identity\nnullkan-spec 1\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.field(), "header");
}

TEST(SpecErrors, EmptyDocument) {
  auto e = parse_error("");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_STREQ(e.what(), "line 1: document: missing setup block");
}

TEST(SpecErrors, DanglingMorphismEndpoint) {
  auto e = parse_error(replace(kChain, "morphism f a b", "morphism f a c"));
  EXPECT_EQ(e.line(), 7u);
  EXPECT_NE(std::string(e.what()).find("dangling reference"), std::string::npos) << e.what();
}

TEST(SpecErrors, DuplicateObject) {
  auto e = parse_error(replace(kChain, "  object b\n", "  object b\n  object b\n"));
  EXPECT_EQ(e.line(), 5u);
  EXPECT_NE(std::string(e.what()).find("duplicate object id 'b'"), std::string::npos) << e.what();
}

TEST(SpecErrors, UnmappedMorphismInFunctor) {
  auto e = parse_error(replace(kChain, "  mor f f\n", ""));
  EXPECT_NE(std::string(e.what()).find("f"), std::string::npos) << e.what();
  EXPECT_GT(e.line(), 10u);
}

TEST(SpecErrors, UnknownElementInNullity) {
  auto doc = parse_spec(replace(kChain, "at b {} {1}", "at b {} {7}"));
  try {
    to_setup(doc);
    ADD_FAILURE() << "no error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling reference to element '7'"), std::string::npos);
  }
}

TEST(SpecErrors, MissingEnd) {
  auto text = kChain.substr(0, kChain.rfind("end\n"));
  auto e = parse_error(text);
  EXPECT_NE(std::string(e.what()).find("end"), std::string::npos) << e.what();
}

TEST(SpecErrors, UnknownModel) {
  auto e = parse_error("nullkan-spec 1\nmodel nope\n");
  EXPECT_STREQ(e.what(), "line 2: model: unknown builtin model 'nope'");
}

TEST(SpecErrors, ModelAndSetupTogether) {
  auto e = parse_error(replace(kChain, "nullkan-spec 1\n", "nullkan-spec 1\nmodel identity\n"));
  EXPECT_GT(e.line(), 0u);
}

TEST(SpecErrors, UnknownKeyword) {
  auto e = parse_error(replace(kChain, "  object b\n", "  thing b\n"));
  EXPECT_EQ(e.line(), 4u);
}

TEST(SpecErrors, AreInputErrors) {
  EXPECT_THROW(parse_spec("garbage"), InputError);
}

TEST(SpecRoundTrip, HandWritten) {
  auto doc = parse_spec(kChain);
  auto text = serialize_spec(doc);
  EXPECT_EQ(parse_spec(text), doc);
  EXPECT_EQ(serialize_spec(parse_spec(text)), text);
}

TEST(SpecRoundTrip, Builtins) {
  for (const auto& name : builtin_model_names()) {
    auto doc = export_setup(builtin_model(name));
    auto text = serialize_spec(doc);
    auto again = parse_spec(text);
    EXPECT_EQ(again, doc) << name;
    EXPECT_EQ(serialize_spec(again), text) << name;
    auto s = to_setup(again);
    EXPECT_EQ(s.base, builtin_model(name).base) << name;
    EXPECT_EQ(s.M->morphism_count(), builtin_model(name).M->morphism_count()) << name;
  }
}

TEST(SpecRoundTrip, OutputUsesLineFeedsOnly) {
  auto text = serialize_spec(export_setup(f2_model(BaseKind::proper)));
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(ShippedSpecs, MatchTheirBuiltins) {
  for (const auto& name : builtin_model_names()) {
    auto text = read_spec(name + ".spec");
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(text, serialize_spec(export_setup(builtin_model(name)))) << name;
  }
}

TEST(ShippedSpecs, ShortcutAndInclusionLoad) {
  auto shortcut = to_setup(parse_spec(read_spec("f2_proper_shortcut.spec")));
  EXPECT_EQ(shortcut.name, "f2_proper");
  auto inc = to_setup(parse_spec(read_spec("inclusion.spec")));
  EXPECT_EQ(inc.name, "inclusion");
  EXPECT_TRUE(check_assumptions(inc).ok());
}

TEST(SpecProperty, ParsedSetupsRunTheSamePipeline) {
  for (const auto& name : builtin_model_names()) {
    auto direct = builtin_model(name);
    auto parsed = to_setup(parse_spec(serialize_spec(export_setup(direct))));
    auto a1 = arrange(direct), a2 = arrange(parsed);
    EXPECT_EQ(run_pipeline(a1).main_null.nulls, run_pipeline(a2).main_null.nulls) << name;
  }
}
