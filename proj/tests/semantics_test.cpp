#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include <ndproof/errors.hpp>
#include <ndproof/semantics.hpp>

#include "random_formula.hpp"

using namespace ndproof;

namespace {

Formula F(const char* s) { return parse_formula(s); }

Structure socrates_world() {
  Structure s;
  s.domain_size = 2;
  s.constants["s"] = 0;
  s.predicates["H"] = {{0}};
  s.predicates["M"] = {};
  return s;
}

// Closed-form count computed independently of the library.
double closed_form(const Signature& sig, int n) {
  double total = std::pow(n, static_cast<double>(sig.constants.size()));
  for (const auto& [f, k] : sig.functions) total *= std::pow(n, std::pow(n, k));
  for (const auto& [p, k] : sig.predicates) total *= std::pow(2.0, std::pow(n, k));
  return total;
}

}  // namespace

TEST(Evaluate, UniversalConditionalFailsOnWitness) {
  Structure s = socrates_world();
  EXPECT_FALSE(evaluate(s, {}, F("∀x(H(x) → M(x))")));
  EXPECT_TRUE(evaluate(s, {}, F("H(s)")));
  EXPECT_FALSE(evaluate(s, {}, F("M(s)")));
  EXPECT_TRUE(evaluate(s, {}, F("∃x ¬H(x)")));
  EXPECT_TRUE(evaluate(s, {{"x", 1}}, F("¬H(x)")));
}

TEST(Evaluate, TermsAndFunctions) {
  Structure s;
  s.domain_size = 3;
  s.constants["a"] = 1;
  s.functions["f"] = {{{0}, 1}, {{1}, 2}, {{2}, 0}};
  s.predicates["P"] = {{0}};
  EXPECT_EQ(evaluate_term(s, {}, parse_term("f(f(a))")), 0);
  EXPECT_TRUE(evaluate(s, {}, F("P(f(f(a)))")));
}

TEST(Evaluate, Errors) {
  Structure s = socrates_world();
  EXPECT_THROW(evaluate(s, {}, F("Q(s)")), SignatureError);
  EXPECT_THROW(evaluate(s, {}, F("H(t)")), SignatureError);
  EXPECT_THROW(evaluate(s, {}, F("H(x)")), std::invalid_argument);
}

TEST(Render, ReadableTables) {
  Structure s;
  s.domain_size = 1;
  s.constants["s"] = 0;
  s.predicates["H"] = {};
  s.predicates["M"] = {{0}};
  const std::string out = render_structure(s);
  EXPECT_NE(out.find("domain: {0}"), std::string::npos);
  EXPECT_NE(out.find("s = 0"), std::string::npos);
  EXPECT_NE(out.find("H = {}"), std::string::npos);
  EXPECT_NE(out.find("M = {0}"), std::string::npos);
}

TEST(Counting, SmallSignatures) {
  Signature p;
  p.predicates["P"] = 1;
  EXPECT_EQ(structure_count(p, 1), 2u);
  Signature pc = p;
  pc.constants.insert("c");
  EXPECT_EQ(structure_count(pc, 2), 8u);
  EXPECT_EQ(structure_count(Signature{}, 4), 1u);
}

TEST(Counting, AgreesWithClosedForm) {
  Signature sig;
  sig.predicates["A"] = 0;
  sig.predicates["P"] = 1;
  sig.predicates["R"] = 2;
  sig.functions["f"] = 1;
  sig.constants = {"a", "b"};
  for (int n = 1; n <= 3; ++n)
    EXPECT_EQ(static_cast<double>(structure_count(sig, n)), closed_form(sig, n)) << n;
  Signature huge;
  huge.predicates["R"] = 3;
  EXPECT_EQ(structure_count(huge, 6), UINT64_MAX);
}

TEST(Enumeration, VisitsEveryStructureOnce) {
  Signature sig;
  sig.predicates["P"] = 1;
  sig.predicates["A"] = 0;
  sig.functions["f"] = 1;
  sig.constants = {"a"};
  for (int n = 1; n <= 3; ++n) {
    std::set<std::string> seen;
    std::uint64_t visits = 0;
    enumerate_structures(sig, n, [&](const Structure& s) {
      ++visits;
      seen.insert(render_structure(s));
      return true;
    });
    EXPECT_EQ(visits, structure_count(sig, n));
    EXPECT_EQ(seen.size(), visits);

    ndtest::FormulaGen gen(static_cast<std::uint64_t>(n) * 77);
    gen.nullary = {"A"};
    gen.unary = {"P"};
    gen.binary = {};
    gen.constants = {"a"};
    for (int i = 0; i < 50; ++i) EXPECT_TRUE(seen.count(render_structure(gen.structure(n))));
  }
}

TEST(Enumeration, RandomAccessMatchesWalk) {
  Signature sig;
  sig.predicates["R"] = 2;
  sig.constants = {"a", "b"};
  StructureEnumerator walk(sig, 2);
  StructureEnumerator jump(sig, 2);
  for (; !walk.done(); walk.advance()) EXPECT_EQ(walk.current(), jump.at(walk.index()));
  EXPECT_EQ(walk.index(), walk.size());
}

TEST(Enumeration, FirstStructureIsAllZero) {
  Signature sig;
  sig.predicates["P"] = 1;
  sig.constants = {"a", "b"};
  Structure first = StructureEnumerator(sig, 3).current();
  EXPECT_EQ(first.constants.at("a"), 0);
  EXPECT_EQ(first.constants.at("b"), 0);
  EXPECT_TRUE(first.predicates.at("P").empty());
}

TEST(Entailment, SocratesIsValidUpToThree) {
  Verdict v = entails({F("∀x(H(x) → M(x))"), F("H(s)")}, F("M(s)"), 3);
  EXPECT_TRUE(v.valid());
  EXPECT_EQ(v.bound, 3);
}

TEST(Entailment, AffirmingTheConsequentHasSmallestCountermodel) {
  Verdict v = entails({F("∀x(H(x) → M(x))"), F("M(s)")}, F("H(s)"), 3);
  ASSERT_FALSE(v.valid());
  Structure expected;
  expected.domain_size = 1;
  expected.constants["s"] = 0;
  expected.predicates["H"] = {};
  expected.predicates["M"] = {{0}};
  EXPECT_EQ(*v.countermodel, expected);
}

TEST(Entailment, CountermodelsReallyAreCountermodels) {
  ndtest::FormulaGen gen(2024);
  gen.use_functions = false;
  int found = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> premises{gen.formula(3)};
    Formula conclusion = gen.formula(3);
    Verdict v = entails(premises, conclusion, 2);
    if (v.valid()) continue;
    ++found;
    EXPECT_TRUE(evaluate(*v.countermodel, {}, premises[0]));
    EXPECT_FALSE(evaluate(*v.countermodel, {}, conclusion));
  }
  EXPECT_GT(found, 50);
}

TEST(Entailment, WorkerCountDoesNotChangeTheAnswer) {
  ndtest::FormulaGen gen(99);
  gen.use_functions = false;
  for (int i = 0; i < 40; ++i) {
    std::vector<Formula> premises{gen.formula(3), gen.formula(2)};
    Formula conclusion = gen.formula(3);
    EntailOptions one;
    EntailOptions many;
    many.workers = 4;
    Verdict a = entails(premises, conclusion, 3, one);
    Verdict b = entails(premises, conclusion, 3, many);
    EXPECT_EQ(a.valid(), b.valid());
    if (!a.valid() && !b.valid()) EXPECT_EQ(*a.countermodel, *b.countermodel);
  }
}

TEST(Entailment, ExtraSymbolsAreInterpreted) {
  EntailOptions opts;
  opts.extra.constants.insert("c");
  Verdict v = entails({F("P(a)")}, F("P(a)"), 2, opts);
  EXPECT_TRUE(v.valid());
}

TEST(Entailment, RejectsBadInputs) {
  EXPECT_THROW(entails({}, F("P(x)"), 2), std::invalid_argument);
  EXPECT_THROW(entails({}, F("A"), 0), std::invalid_argument);
}

TEST(Entailment, CapIsCheckedBeforeSearch) {
  EntailOptions opts;
  opts.cap = 1000;
  EXPECT_THROW(entails({F("∀x ∀y ∀z(R(x, y) ∨ S(y, z))")}, F("A"), 3, opts), ResourceError);
  EXPECT_THROW(StructureEnumerator(Signature{{{"R", 2}}, {}, {}}, 4, 10), ResourceError);
}

TEST(Entailment, EnvironmentOverridesTheCap) {
  ::setenv("ND_MAX_STRUCTURES", "12345", 1);
  EXPECT_EQ(default_structure_cap(), 12345u);
  ::setenv("ND_MAX_STRUCTURES", "bogus", 1);
  EXPECT_EQ(default_structure_cap(), 10000000u);
  ::unsetenv("ND_MAX_STRUCTURES");
  EXPECT_EQ(default_structure_cap(), 10000000u);
}
