#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <ndproof/checker.hpp>
#include <ndproof/corpus.hpp>
#include <ndproof/serialize.hpp>

using namespace ndproof;

namespace {

std::set<std::string> codes_of(const CheckReport& r) {
  std::set<std::string> out;
  for (const auto& d : r.diagnostics) out.insert(std::string(diag_code_name(d.code)));
  return out;
}

std::set<std::string> codes(const std::string& text, bool strict = false) {
  CheckConfig cfg;
  cfg.strict = strict;
  return codes_of(check_proof(parse_proof(text), cfg));
}


using Codes = std::set<std::string>;
const Codes kNone{};

}  // namespace

TEST(DiagCodes, NamesRoundTrip) {
  for (DiagCode c : all_diag_codes()) EXPECT_EQ(parse_diag_code(diag_code_name(c)), c);
  EXPECT_EQ(diag_code_name(DiagCode::Scope), "E_SCOPE");
  EXPECT_EQ(diag_code_name(DiagCode::RuleRelabeled), "W_RULE_RELABELED");
  EXPECT_FALSE(parse_diag_code("E_NOPE"));
}

// ---------- propositional rules ----------

TEST(Rules, AndIntroAndElim) {
  EXPECT_EQ(codes("1. A ; premise\n2. B ; premise\n3. A ∧ B ; AndI 1, 2\n4. B ; AndE 3\n"), kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. B ; premise\n3. C ; premise\n4. A ∧ B ∧ C ; AndI 1, 2, 3\n"), kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. B ; premise\n3. B ∧ A ; AndI 1, 2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. A ∧ B ; premise\n2. C ; AndE 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. (A ∧ B) ∧ C ; premise\n2. A ∧ B ; AndE 1\n"), kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. A ∧ A ; AndI 1\n"), Codes{"E_BAD_CITATION"});
}

TEST(Rules, OrIntro) {
  EXPECT_EQ(codes("1. A ; premise\n2. B ∨ A ; OrI 1\n"), kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. B ∨ C ; OrI 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. A ; premise\n2. A ∧ B ; OrI 1\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, OrElimWithLinesAndSubproofs) {
  EXPECT_EQ(codes("1. A ∨ B ; premise\n2. A → C ; premise\n3. B → C ; premise\n4. C ; OrE 1, 2, 3\n"), kNone);
  EXPECT_EQ(codes("1. A ∨ B ; premise\n"
                  "2. | A ; assume\n"
                  "3. | B ∨ A ; OrI 2\n"
                  "4. | B ; assume\n"
                  "5. | B ∨ A ; OrI 4\n"
                  "6. B ∨ A ; OrE 1, 2-3, 4-5\n"),
            kNone);
  EXPECT_EQ(codes("1. A ∨ B ; premise\n2. A → C ; premise\n3. C ; OrE 1, 2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. A ∨ B ; premise\n2. A → C ; premise\n3. B → D ; premise\n4. C ; OrE 1, 2, 3\n"),
            Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, ImpIntroAndElim) {
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. A → A ; ImpI 1-2\n"), kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. A ; premise\n3. B ; ImpE 1, 2\n"), kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. A ; premise\n3. B ; ImpE 2, 1\n"), kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. B ; premise\n3. A ; ImpE 1, 2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. B → A ; ImpI 1-2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. A ; premise\n2. B → A ; ImpI 1\n"), Codes{"E_BAD_CITATION"});
}

TEST(Rules, NegationAndBottom) {
  EXPECT_EQ(codes("1. A ; premise\n"
                  "2. | ¬A ; assume\n"
                  "3. | ⊥ ; BottomI 1, 2\n"
                  "4. ¬¬A ; NotI 2-3\n"
                  "5. A ; NotE 4\n"),
            kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. ¬A ; premise\n3. ⊥ ; BottomI 2, 1\n"), kNone);
  EXPECT_EQ(codes("1. A ; premise\n2. ¬B ; premise\n3. ⊥ ; BottomI 1, 2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. ¬A ; premise\n2. A ; NotE 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. ¬A ; NotI 1-2\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, NotIntroConcludingPositiveIsRelabeled) {
  const std::string text =
      "1. ¬¬A ; premise\n"
      "2. | ¬A ; assume\n"
      "3. | ⊥ ; BottomI 1, 2\n"
      "4. A ; NotI 2-3\n";
  CheckReport r = check_proof(parse_proof(text));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(codes_of(r), Codes{"W_RULE_RELABELED"});
  EXPECT_EQ(codes(text, true), Codes{"E_DERIVED_IN_STRICT"});
}

TEST(Rules, IndirectProof) {
  const std::string text =
      "1. ¬¬A ; premise\n"
      "2. | ¬A ; assume\n"
      "3. | ⊥ ; BottomI 1, 2\n"
      "4. A ; IP 2-3\n";
  EXPECT_EQ(codes(text), kNone);
  EXPECT_EQ(codes(text, true), Codes{"E_DERIVED_IN_STRICT"});
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. ¬A ; IP 1-2\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, Biconditional) {
  EXPECT_EQ(codes("1. | A ; assume\n"
                  "2. | A ∧ A ; AndI 1, 1\n"
                  "3. | A ∧ A ; assume\n"
                  "4. | A ; AndE 3\n"
                  "5. A ↔ A ∧ A ; IffI 1-2, 3-4\n"),
            kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. B → A ; premise\n3. A ↔ B ; IffI 1, 2\n"), kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. B → A ; premise\n3. B ↔ A ; IffI 2, 1\n"), kNone);
  EXPECT_EQ(codes("1. A → B ; premise\n2. A → B ; premise\n3. A ↔ B ; IffI 1, 2\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. A ↔ B ; premise\n2. B ; premise\n3. A ; IffE 1, 2\n"), kNone);
  EXPECT_EQ(codes("1. A ↔ B ; premise\n2. B → A ; IffE 1\n"), kNone);
  EXPECT_EQ(codes("1. A ↔ B ; premise\n2. C ; premise\n3. A ; IffE 1, 2\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, ReiterationAndDerivedRewrites) {
  EXPECT_EQ(codes("1. A ; premise\n2. | B ; assume\n3. | A ; Reit 1\n4. B → A ; ImpI 2-3\n"), kNone);
  EXPECT_EQ(codes("1. ¬∀x P(x) ; premise\n2. ∃x ¬P(x) ; QN 1\n"), kNone);
  EXPECT_EQ(codes("1. ∀x ¬P(x) ; premise\n2. ¬∃x P(x) ; QN 1\n"), kNone);
  EXPECT_EQ(codes("1. ¬∀x P(x) ; premise\n2. ∀x ¬P(x) ; QN 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. ¬(A → B) ; premise\n2. A ∧ ¬B ; NegImp 1\n"), kNone);
  EXPECT_EQ(codes("1. A ∧ ¬B ; premise\n2. ¬(A → B) ; NegImp 1\n"), kNone);
  EXPECT_EQ(codes("1. ¬(A → B) ; premise\n2. ¬A ∧ B ; NegImp 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. ¬∀x P(x) ; premise\n2. ∃x ¬P(x) ; QN 1\n", true), Codes{"E_DERIVED_IN_STRICT"});
}

// ---------- quantifier rules ----------

TEST(Rules, ForallElim) {
  EXPECT_EQ(codes("1. ∀x(H(x) → M(x)) ; premise\n2. H(s) → M(s) ; ForallE 1\n"), kNone);
  EXPECT_EQ(codes("1. ∀x R(x, x) ; premise\n2. R(a, b) ; ForallE 1\n"), Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. ∀x P(x) ; premise\n2. P(f(a)) ; ForallE 1\n"), kNone);
  EXPECT_EQ(codes("1. ∀x A ; premise\n2. A ; ForallE 1\n"), kNone);
  EXPECT_EQ(codes("1. P(a) ; premise\n2. P(a) ; ForallE 1\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, ExistsIntro) {
  EXPECT_EQ(codes("1. R(a, a) ; premise\n2. ∃x R(x, a) ; ExistsI 1\n"), kNone);
  EXPECT_EQ(codes("1. R(a, a) ; premise\n2. ∃x R(x, x) ; ExistsI 1\n"), kNone);
  EXPECT_EQ(codes("1. R(a, b) ; premise\n2. ∃x R(x, x) ; ExistsI 1\n"), Codes{"E_RULE_MISMATCH"});
}

TEST(Rules, ExistsElimNeedsFreshWitness) {
  EXPECT_EQ(codes("1. ∃x P(x) ; premise\n2. P(c) ; ExistsE 1\n3. ∃y P(y) ; ExistsI 2\n"), kNone);
  EXPECT_EQ(codes("1. ∃x P(x) ; premise\n2. P(a) ; premise\n3. P(a) ; ExistsE 1\n4. P(a) ; Reit 2\n"),
            Codes{"E_FRESHNESS"});
  EXPECT_EQ(codes("1. ∃x P(x) ; premise\n2. Q(c) ; ExistsE 1\n3. ∃x Q(x) ; ExistsI 2\n"),
            Codes{"E_RULE_MISMATCH"});
  EXPECT_EQ(codes("1. ∃x P(x) ; premise\n2. P(c) ; ExistsE 1\n"), Codes{"E_FRESHNESS"});
}

TEST(Rules, ForallIntroBoxAndDirect) {
  EXPECT_EQ(codes("1. ∀x(P(x) ∧ Q(x)) ; premise\n"
                  "2. | [c] ; assume\n"
                  "3. | P(c) ∧ Q(c) ; ForallE 1\n"
                  "4. | P(c) ; AndE 3\n"
                  "5. ∀y P(y) ; ForallI 2-4\n"),
            kNone);
  EXPECT_EQ(codes("1. ∀x(P(x) ∧ Q(x)) ; premise\n"
                  "2. P(c) ∧ Q(c) ; ForallE 1\n"
                  "3. P(c) ; AndE 2\n"
                  "4. ∀y P(y) ; ForallI 3\n"),
            kNone);
  EXPECT_EQ(codes("1. P(a) ; premise\n2. ∀x P(x) ; ForallI 1\n"), Codes{"E_FRESHNESS"});
  EXPECT_EQ(codes("1. | P(c) ; assume\n2. | ∀x P(x) ; ForallI 1\n3. P(c) → ∀x P(x) ; ImpI 1-2\n"),
            Codes{"E_FRESHNESS"});
}

// ---------- citations and scope ----------

TEST(Citations, ScopeAndShape) {
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. A → A ; ImpI 1-2\n4. A ; Reit 2\n"),
            Codes{"E_SCOPE"});
  EXPECT_EQ(codes("1. A ; premise\n2. A ; Reit 3\n3. A ; Reit 1\n"), Codes{"E_BAD_CITATION"});
  EXPECT_EQ(codes("1. A ; premise\n2. A ; Reit 2\n"), Codes{"E_BAD_CITATION"});
  EXPECT_EQ(codes("1. A ; premise\n2. A ; Reit 9\n"), Codes{"E_BAD_CITATION"});
  EXPECT_EQ(codes("1. | A ; assume\n2. | A ; Reit 1\n3. A → A ; ImpI 1-1\n"), Codes{"E_BAD_CITATION"});
  EXPECT_EQ(codes("1. A ; premise\n2. A ∧ A ; AndI 1, 1\n"), kNone);
}

TEST(Checker, GoalMismatch) {
  EXPECT_EQ(codes("goal: B\n1. A ; premise\n2. A ; Reit 1\n"), Codes{"E_GOAL_MISMATCH"});
  EXPECT_EQ(codes("goal: ∀y P(y)\n1. ∀x P(x) ; premise\n2. ∀x P(x) ; Reit 1\n"), kNone);
}

TEST(Checker, UnknownRuleFromJson) {
  Json j = document_to_json(parse_proof("1. A ; premise\n2. A ; Reit 1\n"));
  j["lines"][1]["justification"]["rule"] = "Frobnicate";
  CheckReport r = check_proof(document_from_json(j));
  EXPECT_EQ(codes_of(r), Codes{"E_UNKNOWN_RULE"});
  EXPECT_FALSE(r.accepted);
}

TEST(Checker, ReportIsOrderedAndAcceptedIffNoErrors) {
  CheckReport r = check_proof(parse_proof("1. A ; premise\n2. B ; Reit 1\n3. C ; Reit 1\n"));
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].line, 2);
  EXPECT_EQ(r.diagnostics[1].line, 3);
  EXPECT_FALSE(r.accepted);
  EXPECT_FALSE(r.proved);
  CheckReport ok = check_proof(parse_proof("1. A ; premise\n2. A ; Reit 1\n"));
  EXPECT_TRUE(ok.accepted);
  ASSERT_TRUE(ok.proved);
  EXPECT_EQ(*ok.proved, parse_formula("A"));
}

TEST(Checker, AlphaMatchingToggle) {
  const std::string text = "1. ∀x P(x) ; premise\n2. ∀y P(y) ; Reit 1\n";
  CheckConfig exact;
  exact.alpha_matching = false;
  EXPECT_TRUE(check_proof(parse_proof(text)).accepted);
  EXPECT_FALSE(check_proof(parse_proof(text), exact).accepted);
}

TEST(FreshConstants, SkipsUsedNames) {
  ProofDocument doc = parse_proof("1. P(c) ; premise\n2. Q(c1) ; premise\n3. P(c) ; Reit 1\n");
  FreshConstants fresh = fresh_constants(doc, 3);
  EXPECT_FALSE(fresh.contains("c"));
  EXPECT_FALSE(fresh.contains("x"));
  EXPECT_TRUE(fresh.contains("d"));
  EXPECT_EQ(fresh.next("c"), "c2");
  EXPECT_EQ(fresh.next("e"), "e");
}

// ---------- doctored side-condition suite ----------

TEST(Doctored, EachCaseYieldsExactlyItsCodes) {
  const std::filesystem::path dir = std::filesystem::path(NDPROOF_TEST_DATA_DIR) / "doctored";
  Json manifest = parse_json(read_file(dir / "manifest.json"));
  ASSERT_GE(manifest["cases"].size(), 10u);
  for (const auto& c : manifest["cases"]) {
    const std::string file = c["file"];
    SCOPED_TRACE(file);
    CheckConfig cfg;
    cfg.strict = c["strict"].get<bool>();
    CheckReport r = check_proof(parse_proof(read_file(dir / file)), cfg);
    Codes expected;
    for (const auto& code : c["codes"]) expected.insert(code.get<std::string>());
    EXPECT_EQ(codes_of(r), expected);
    EXPECT_FALSE(r.accepted);
  }
}

// ---------- structural properties ----------

TEST(Properties, LineVerdictsAreLocal) {
  const std::string prefix =
      "1. ∀x(H(x) → M(x)) ; premise\n"
      "2. H(s) ; premise\n"
      "3. H(s) → M(s) ; ForallE 1\n"
      "4. M(s) ; ImpE 3, 2\n";
  ProofDocument short_doc = parse_proof(prefix);
  ProofDocument long_doc = parse_proof(prefix + "5. N(s) ; ImpE 3, 2\n6. M(s) ∧ H(s) ; AndI 4, 2\n");
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(check_line(short_doc, n), check_line(long_doc, n)) << n;
}

TEST(Properties, CheckingIsDeterministic) {
  const std::string text = read_file(std::filesystem::path(NDPROOF_CORPUS_DIR) / "cats_indirect_literal.ndp");
  CheckReport a = check_proof(parse_proof(text));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(check_proof(parse_proof(text)).diagnostics, a.diagnostics);
}

TEST(Properties, StrictModeOnlyAddsRejections) {
  for (const auto& entry : std::filesystem::directory_iterator(NDPROOF_CORPUS_DIR)) {
    if (entry.path().extension() != ".ndp") continue;
    SCOPED_TRACE(entry.path().filename().string());
    ProofDocument doc = parse_proof(read_file(entry.path()));
    CheckConfig strict;
    strict.strict = true;
    CheckReport lax = check_proof(doc);
    CheckReport tight = check_proof(doc, strict);
    if (tight.accepted) EXPECT_TRUE(lax.accepted);
  }
}
