#include <gtest/gtest.h>

#include <ndproof/proofdoc.hpp>

using namespace ndproof;

namespace {

std::string parse_error_code(const std::string& text) {
  try {
    parse_proof(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  return "";
}

const char* kNested =
    "1. P ; premise\n"
    "2. | Q ; assume\n"
    "3. | | R ; assume\n"
    "4. | | P ∧ R ; AndI 1, 3\n"
    "5. | R → P ∧ R ; ImpI 3-4\n"
    "6. | | S ; assume\n"
    "7. | | S ; Reit 6\n"
    "8. | S → S ; ImpI 6-7\n"
    "9. Q → (R → P ∧ R) ; ImpI 2-5\n";

}  // namespace

TEST(RuleNames, CanonicalAndListingSpellings) {
  EXPECT_EQ(parse_rule_name("ForallE"), Rule::ForallE);
  EXPECT_EQ(parse_rule_name("∀E"), Rule::ForallE);
  EXPECT_EQ(parse_rule_name("→E"), Rule::ImpE);
  EXPECT_EQ(parse_rule_name("⊥"), Rule::BottomI);
  EXPECT_EQ(parse_rule_name("Def"), Rule::QN);
  EXPECT_EQ(parse_rule_name("EQUIV"), Rule::NegImp);
  EXPECT_EQ(parse_rule_name("¬I"), Rule::NotI);
  EXPECT_EQ(parse_rule_name("Frobnicate"), Rule::Unknown);
  EXPECT_EQ(rule_name(Rule::ExistsI), "ExistsI");
  EXPECT_TRUE(is_derived_rule(Rule::QN));
  EXPECT_TRUE(is_derived_rule(Rule::IP));
  EXPECT_FALSE(is_derived_rule(Rule::NotI));
}

TEST(ProofText, ParsesLinesDepthsAndCitations) {
  ProofDocument doc = parse_proof(
      "name: demo\n"
      "goal: ∃x M(x)\n"
      "# comment\n"
      "1. ∀x(H(x) → M(x)) ; premise\n"
      "2. H(s) ; premise\n"
      "3. | ¬∃x M(x) ; assume   # trailing comment\n"
      "4. | ⊥ ; BottomI 3 3\n"
      "5. ∃x M(x) ; IP 3-4\n");
  EXPECT_EQ(doc.name(), "demo");
  ASSERT_TRUE(doc.declared_goal());
  EXPECT_EQ(doc.size(), 5);
  EXPECT_EQ(doc.premises().size(), 2u);
  EXPECT_EQ(doc.line(3).kind, LineKind::Assumption);
  EXPECT_EQ(doc.line(3).depth, 1);
  const auto& j = *doc.line(5).justification;
  EXPECT_EQ(j.rule, Rule::IP);
  ASSERT_EQ(j.cited.size(), 1u);
  EXPECT_EQ(j.cited[0], Citation::span(3, 4));
  EXPECT_EQ(doc.line(4).justification->cited.size(), 2u);
}

TEST(ProofText, BoxedConstantOpeners) {
  ProofDocument doc = parse_proof(
      "1. ∀x P(x) ; premise\n"
      "2. | [c] ; assume\n"
      "3. | P(c) ; ForallE 1\n"
      "4. ∀y P(y) ; ForallI 2-3\n"
      "5. | [d] Q(d) ; assume\n"
      "6. | Q(d) ; Reit 5\n"
      "7. ∀x(Q(x) → Q(x)) ; ForallI 5-6\n");
  EXPECT_EQ(doc.line(2).kind, LineKind::BoxedConstant);
  EXPECT_EQ(*doc.line(2).constant, "c");
  EXPECT_FALSE(doc.line(2).formula);
  EXPECT_TRUE(doc.line(5).formula);
  EXPECT_TRUE(doc.signature().constants.count("c"));
}

TEST(ProofText, ErrorsAreLocated) {
  try {
    parse_proof("1. P ; premise\n2. P ∧ ; AndI 1, 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), "E_SYNTAX");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 4u);
  }
  try {
    parse_proof("1. P ; premise\n2. P ; Frobnicate 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), "E_UNKNOWN_RULE");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
}

TEST(ProofText, StructuralErrors) {
  EXPECT_EQ(parse_error_code("1. P ; premise\n3. P ; Reit 1\n"), "E_NUMBERING");
  EXPECT_EQ(parse_error_code("1. | P ; assume\n2. Q ; premise\n"), "E_STRUCTURE");
  EXPECT_EQ(parse_error_code("1. P ; premise\n2. | | Q ; assume\n"), "E_STRUCTURE");
  EXPECT_EQ(parse_error_code("1. P ; premise\n2. | P ; Reit 1\n"), "E_STRUCTURE");
  EXPECT_EQ(parse_error_code("1. P ; premise\n2. | Q ; assume\n"), "E_UNCLOSED_SUBPROOF");
  EXPECT_EQ(parse_error_code("1. P(x) ; premise\n"), "E_OPEN_FORMULA");
  EXPECT_EQ(parse_error_code("1. P(a) ; premise\n2. P(a, a) ; Reit 1\n"), "E_SIGNATURE");
  EXPECT_EQ(parse_error_code("1. P ; premise\n2. P ; Reit one\n"), "E_SYNTAX");
  EXPECT_EQ(parse_error_code("1. P ; premise\n2. P Reit 1\n"), "E_SYNTAX");
  EXPECT_EQ(parse_error_code("goal: P(x)\n1. P(a) ; premise\n"), "E_OPEN_FORMULA");
}

TEST(Subproofs, BracketingAndParents) {
  ProofDocument doc = parse_proof(kNested);
  const auto& sps = doc.subproofs();
  ASSERT_EQ(sps.size(), 3u);
  EXPECT_EQ(sps[0].opener, 2);
  EXPECT_EQ(sps[0].last, 8);
  EXPECT_EQ(sps[1].opener, 3);
  EXPECT_EQ(sps[1].last, 4);
  EXPECT_EQ(sps[1].parent, 0);
  EXPECT_EQ(sps[2].opener, 6);
  EXPECT_EQ(sps[2].last, 7);
  EXPECT_EQ(doc.innermost(1), -1);
  EXPECT_EQ(doc.innermost(4), 1);
  EXPECT_EQ(doc.innermost(5), 0);
  EXPECT_EQ(doc.subproof_opened_at(6), 2);
  EXPECT_EQ(doc.subproof_opened_at(5), -1);
}

TEST(Subproofs, SiblingOpenerClosesPrevious) {
  ProofDocument doc = parse_proof(
      "1. P ; premise\n"
      "2. | A ; assume\n"
      "3. | B ; assume\n"
      "4. A → A ; ImpI 2-2\n");
  ASSERT_EQ(doc.subproofs().size(), 2u);
  EXPECT_EQ(doc.subproofs()[0].last, 2);
  EXPECT_EQ(doc.subproofs()[1].last, 3);
}

TEST(Accessibility, ExcludesClosedSubproofInteriors) {
  ProofDocument doc = parse_proof(kNested);
  auto at7 = accessible(doc, 7);
  EXPECT_TRUE(at7.count(Citation::line(1)));
  EXPECT_TRUE(at7.count(Citation::line(2)));
  EXPECT_TRUE(at7.count(Citation::line(5)));
  EXPECT_TRUE(at7.count(Citation::line(6)));
  EXPECT_FALSE(at7.count(Citation::line(3)));
  EXPECT_FALSE(at7.count(Citation::line(4)));
  EXPECT_TRUE(at7.count(Citation::span(3, 4)));

  auto at9 = accessible(doc, 9);
  EXPECT_TRUE(at9.count(Citation::span(2, 8)));
  EXPECT_FALSE(at9.count(Citation::span(3, 4)));
  EXPECT_FALSE(at9.count(Citation::line(5)));
  EXPECT_FALSE(at9.count(Citation::line(2)));
  EXPECT_FALSE(at9.count(Citation::line(9)));
}

TEST(Format, RoundTripsThroughText) {
  ProofDocument doc = parse_proof(kNested);
  const std::string text = format_proof(doc);
  ProofDocument again = parse_proof(text);
  EXPECT_EQ(format_proof(again), text);
  EXPECT_EQ(again.size(), doc.size());
  for (int n = 1; n <= doc.size(); ++n) {
    EXPECT_EQ(again.line(n).depth, doc.line(n).depth);
    EXPECT_EQ(*again.line(n).formula, *doc.line(n).formula);
  }
}

TEST(Format, CanonicalLayout) {
  ProofDocument doc = parse_proof("name: t\n1. forall x P(x) ; premise\n2. P(a) ; ∀E 1\n3. | Q ; Assumption\n4. Q -> Q ; →I 3-3\n");
  EXPECT_EQ(format_proof(doc),
            "name: t\n"
            "\n"
            "1. ∀x P(x) ; premise\n"
            "2. P(a) ; ForallE 1\n"
            "3. | Q ; assume\n"
            "4. Q → Q ; ImpI 3-3\n");
}
