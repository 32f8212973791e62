#include "ddl/rule_forge.h"

#include <gtest/gtest.h>

#include "ddl/errors.h"
#include "lottery.h"
#include "test_util.h"

namespace ddl {
namespace {

using testing::Q;

DefaultRule Rule(const KnowledgeBase& kb, const std::string& pre,
                 std::vector<std::string> justs, const std::string& cons) {
  DefaultRule r;
  r.prerequisite = ParseFormula(pre, kb);
  for (const auto& j : justs) r.justifications.push_back(ParseFormula(j, kb));
  r.consequent = ParseFormula(cons, kb);
  return r;
}

bool HasShape(const std::vector<DefaultRule>& rules, const DefaultRule& r) {
  for (const auto& x : rules) {
    if (x.SameShape(r)) return true;
  }
  return false;
}

TEST(EntailsSubset, Cases) {
  const ParsedKb p = ParseKb(
      "domain 2\npred Bird Penguin Red\naxiom Penguin -> Bird\n");
  const auto f = [&](const char* s) { return ParseFormula(s, p.kb); };
  EXPECT_TRUE(EntailsSubset(p.kb, f("Penguin"), f("Bird")));
  EXPECT_FALSE(EntailsSubset(p.kb, f("Bird"), f("Penguin")));
  EXPECT_TRUE(EntailsSubset(p.kb, f("Bird"), f("Bird")));
  EXPECT_FALSE(EntailsSubset(p.kb, f("Red & Bird"), f("Penguin")));
}

TEST(IntervalSubcase, PrecedenceOrder) {
  EXPECT_EQ(IntervalSubcase(Q(1, 2), Q(4, 5), Q(17, 20), Q(19, 20)), 'a');
  EXPECT_EQ(IntervalSubcase(Q(17, 20), Q(19, 20), Q(1, 2), Q(4, 5)), 'a');
  EXPECT_EQ(IntervalSubcase(Q(1, 2), Q(1), Q(17, 20), Q(19, 20)), 'b');
  EXPECT_EQ(IntervalSubcase(Q(17, 20), Q(19, 20), Q(1, 2), Q(1)), 'c');
  // Equal intervals satisfy the first test.
  EXPECT_EQ(IntervalSubcase(Q(1, 2), Q(1), Q(1, 2), Q(1)), 'a');
}

TEST(GenerateCandidates, NestedRedBirdKeepsPlainRule) {
  const ParsedKb p = testing::LoadData("redbird_nested.kb");
  const Formula fly = ParseFormula("Fly", p.kb);
  const CandidateSet cs = GenerateCandidates(p.kb, fly);
  ASSERT_EQ(cs.candidates.size(), 1u);
  EXPECT_TRUE(cs.candidates[0].SameShape(Rule(p.kb, "Bird", {"Fly"}, "Fly")));
  EXPECT_EQ(ClassifyPair(p.kb, p.kb.stats[1], p.kb.stats[0]), "1b");
  EXPECT_EQ(ClassifyPair(p.kb, p.kb.stats[0], p.kb.stats[1]), "2b");
}

TEST(GenerateCandidates, ConflictingRedBirdAddsJustification) {
  const ParsedKb p = testing::LoadData("redbird_conflict.kb");
  const CandidateSet cs = GenerateCandidates(p.kb, ParseFormula("Fly", p.kb));
  ASSERT_EQ(cs.candidates.size(), 2u);
  EXPECT_TRUE(HasShape(cs.candidates, Rule(p.kb, "Red & Bird", {"Fly"}, "Fly")));
  EXPECT_TRUE(HasShape(cs.candidates,
                       Rule(p.kb, "Bird", {"Fly", "!(Red & Bird)"}, "Fly")));
  EXPECT_EQ(ClassifyPair(p.kb, p.kb.stats[1], p.kb.stats[0]), "1a");
}

TEST(GenerateCandidates, UnrelatedReferencesCrossJustify) {
  const ParsedKb p = ParseKb(
      "domain 4\npred F A C\nstat F | A in [1/2, 1]\nstat F | C in [1/2, 1]\n");
  const CandidateSet cs = GenerateCandidates(p.kb, ParseFormula("F", p.kb));
  EXPECT_EQ(ClassifyPair(p.kb, p.kb.stats[0], p.kb.stats[1]), "3a");
  ASSERT_EQ(cs.candidates.size(), 2u);
  EXPECT_TRUE(HasShape(cs.candidates, Rule(p.kb, "A", {"F", "!C"}, "F")));
  EXPECT_TRUE(HasShape(cs.candidates, Rule(p.kb, "C", {"!A", "F"}, "F")));
}

TEST(GenerateCandidates, UnrelatedSubcasesBAndC) {
  const ParsedKb b = ParseKb(
      "domain 4\npred F A C\nstat F | A in [0, 1]\nstat F | C in [1/4, 3/4]\n");
  const CandidateSet cb = GenerateCandidates(b.kb, ParseFormula("F", b.kb));
  EXPECT_EQ(cb.candidates[0].origin.case_tag, "3b");
  EXPECT_TRUE(HasShape(cb.candidates, Rule(b.kb, "A", {"F", "!C"}, "F")));
  EXPECT_TRUE(HasShape(cb.candidates, Rule(b.kb, "C", {"F"}, "F")));

  const ParsedKb c = ParseKb(
      "domain 4\npred F A C\nstat F | A in [1/4, 3/4]\nstat F | C in [0, 1]\n");
  const CandidateSet cc = GenerateCandidates(c.kb, ParseFormula("F", c.kb));
  EXPECT_EQ(cc.candidates[0].origin.case_tag, "3c");
  EXPECT_TRUE(HasShape(cc.candidates, Rule(c.kb, "C", {"F", "!A"}, "F")));
  EXPECT_TRUE(HasShape(cc.candidates, Rule(c.kb, "A", {"F"}, "F")));
}

TEST(GenerateCandidates, SingleStatement) {
  const ParsedKb p = testing::LoadData("bird.kb");
  const CandidateSet cs = GenerateCandidates(p.kb, ParseFormula("Fly", p.kb));
  ASSERT_EQ(cs.candidates.size(), 1u);
  EXPECT_EQ(cs.candidates[0].origin.case_tag, "single");
}

TEST(GenerateCandidates, CoextensiveReferencesWarn) {
  const ParsedKb p = ParseKb(
      "domain 4\npred F A C\naxiom A <-> C\n"
      "stat F | A in [9/10, 1]\nstat F | C in [4/5, 1]\n");
  const CandidateSet cs = GenerateCandidates(p.kb, ParseFormula("F", p.kb));
  ASSERT_EQ(cs.candidates.size(), 1u);
  EXPECT_EQ(cs.warnings.size(), 1u);
  EXPECT_EQ(cs.candidates[0].origin.sources.size(), 2u);
  EXPECT_EQ(*cs.candidates[0].SourceLowerBound(), Q(9, 10));
}

TEST(GenerateCandidates, NoStatementThrows) {
  const ParsedKb p = testing::LoadData("rival_defaults.kb");
  EXPECT_THROW(GenerateCandidates(p.kb, ParseFormula("T", p.kb)), Error);
}

TEST(GenerateCandidates, NegatedTargetUsesComplements) {
  const ParsedKb p = testing::LoadData("bird.kb");
  const CandidateSet cs = GenerateCandidates(p.kb, ParseFormula("!Fly", p.kb));
  ASSERT_EQ(cs.candidates.size(), 1u);
  const auto& src = cs.candidates[0].origin.sources;
  ASSERT_EQ(src.size(), 1u);
  EXPECT_EQ(src[0].lower, Q(1, 20));
  EXPECT_EQ(src[0].upper, Q(3, 20));
}

TEST(FilterByDelta, Cases) {
  const ParsedKb nested = testing::LoadData("redbird_nested.kb");
  const Formula fly = ParseFormula("Fly", nested.kb);
  // The red-bird statement alone would give a rule with lower bound 1/2.
  const ParsedKb red = ParseKb(
      "domain 4\npred Bird Fly Red\nstat Fly | Red & Bird in [1/2, 1]\n");
  const FilterResult r =
      FilterByDelta(GenerateCandidates(red.kb, ParseFormula("Fly", red.kb)),
                    Q(1, 20));
  EXPECT_TRUE(r.kept.empty());
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_NE(r.rejected[0].reason.find("0.5"), std::string::npos);

  const FilterResult b =
      FilterByDelta(GenerateCandidates(nested.kb, fly), Q(3, 20));
  EXPECT_EQ(b.kept.size(), 1u);

  const CandidateSet conflict = GenerateCandidates(
      testing::LoadData("redbird_conflict.kb").kb, fly);
  const FilterResult everything = FilterByDelta(conflict, Q(999, 1000));
  EXPECT_EQ(everything.kept.size(), conflict.candidates.size());
}

TEST(CompileDefaults, PenguinYieldsAmendedRules) {
  const ParsedKb p = testing::LoadData("penguin.kb");
  const CompiledDefaults d = CompileDefaults(p.kb, Q(3, 20));
  ASSERT_EQ(d.kept.size(), 2u);
  EXPECT_TRUE(HasShape(d.kept, Rule(p.kb, "Bird", {"Fly", "!Penguin"}, "Fly")));
  EXPECT_TRUE(HasShape(d.kept, Rule(p.kb, "Penguin", {"!Fly"}, "!Fly")));
}

TEST(LotteryDefaults, RulesAndDeltaStar) {
  cli::LotterySpec spec;
  spec.n = 3;
  spec.upper = Q(1, 2);
  const ParsedKb p = cli::MakeLottery(spec);
  const LotteryDefaults d = GenerateLotteryDefaults(p.kb);
  ASSERT_EQ(d.rules.size(), 3u);
  EXPECT_EQ(d.delta_star, Q(1, 2));
  EXPECT_TRUE(d.rules[1].SameShape(Rule(p.kb, "B", {"!S2"}, "!S2")));
}

TEST(LotteryDefaults, DeltaStarIsMaximum) {
  cli::LotterySpec spec;
  spec.n = 5;
  ParsedKb p = cli::MakeLottery(spec);
  for (std::size_t i = 0; i < 5; ++i) {
    p.kb.stats[i].lower = 0;
    p.kb.stats[i].upper = Q(static_cast<long>(i + 1), 100);
  }
  EXPECT_EQ(GenerateLotteryDefaults(p.kb).delta_star, Q(1, 20));
}

TEST(LotteryDefaults, SingleSpecies) {
  cli::LotterySpec spec;
  spec.n = 1;
  const ParsedKb p = cli::MakeLottery(spec);
  const LotteryDefaults d = GenerateLotteryDefaults(p.kb);
  ASSERT_EQ(d.rules.size(), 1u);
  EXPECT_TRUE(d.rules[0].SameShape(Rule(p.kb, "B", {"!S1"}, "!S1")));
}

TEST(LotteryDefaults, SchemaMismatch) {
  const ParsedKb p = testing::LoadData("penguin.kb");
  EXPECT_THROW(GenerateLotteryDefaults(p.kb), SchemaMismatch);
  const ParsedKb overlap = ParseKb(
      "domain 4\npred B S1 S2\naxiom B <-> S1 | S2\n"
      "stat S1 | B in [0, 1]\nstat S2 | B in [0, 1]\n");
  EXPECT_THROW(GenerateLotteryDefaults(overlap.kb), SchemaMismatch);
}

}  // namespace
}  // namespace ddl
