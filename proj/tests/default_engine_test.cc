#include "ddl/default_engine.h"

#include <gtest/gtest.h>

#include "ddl/errors.h"
#include "ddl/oracle.h"
#include "lottery.h"
#include "test_util.h"

namespace ddl {
namespace {

using testing::At;
using testing::Q;
using testing::Share;

struct Theory {
  ParsedKb parsed;
  std::shared_ptr<const KnowledgeBase> kb;
  ModelCounter counter;

  explicit Theory(ParsedKb p)
      : parsed(std::move(p)), kb(Share(parsed.kb)), counter(kb) {}

  WorldState Base() const {
    return WorldState::FromEvidence(kb, parsed.evidence);
  }
};

Theory Lottery(std::size_t n, std::size_t domain = 8) {
  cli::LotterySpec spec;
  spec.n = n;
  spec.domain = domain;
  return Theory(cli::MakeLottery(spec));
}

bool ExtensionEntails(const Theory& t, const Extension& e,
                      const GroundFormula& q) {
  return t.counter.Entails(t.Base().With(e.conclusions), q);
}

TEST(Applicable, PenguinBlocksBirdRule) {
  const Theory t(testing::LoadData("penguin.kb"));
  const auto ground = GroundRules(t.parsed.rules, 1);
  EXPECT_EQ(Applicable(ground[0], t.Base(), t.counter), Applicability::kBlocked);
  EXPECT_EQ(Applicable(ground[1], t.Base(), t.counter), Applicability::kApplies);
}

TEST(Applicable, NoEvidenceNoPrerequisite) {
  const Theory t(testing::LoadData("bird.kb"));
  const auto ground = GroundRules(t.parsed.rules, 1);
  EXPECT_EQ(Applicable(ground[0], WorldState{t.kb, {}}, t.counter),
            Applicability::kNoPrerequisite);
  EXPECT_EQ(Applicable(ground[0], t.Base(), t.counter), Applicability::kApplies);
}

TEST(Applicable, ExactStatisticBlocksContraryJustification) {
  const Theory t(ParseKb(
      "domain 3\npred B F\nconst a\nstat F | B in [1, 1]\nfact B(a)\n"
      "default B : !F / !F\n"));
  const auto ground = GroundRules(t.parsed.rules, 1);
  EXPECT_EQ(Applicable(ground[0], t.Base(), t.counter), Applicability::kBlocked);
}

TEST(ReiterExtensions, RivalDefaultsGiveTwo) {
  const Theory t(testing::LoadData("rival_defaults.kb"));
  const auto exts = ReiterExtensions(t.counter, t.parsed.evidence, t.parsed.rules);
  ASSERT_EQ(exts.size(), 2u);
  const GroundFormula flies = At(t.parsed.kb, "T");
  const bool first = ExtensionEntails(t, exts[0], flies);
  const bool second = ExtensionEntails(t, exts[1], flies);
  EXPECT_NE(first, second);
  EXPECT_TRUE(ExtensionEntails(t, first ? exts[1] : exts[0], flies.Negated()));
}

TEST(ReiterExtensions, LotteryThree) {
  const Theory t = Lottery(3);
  const auto exts = ReiterExtensions(t.counter, t.parsed.evidence, t.parsed.rules);
  ASSERT_EQ(exts.size(), 3u);
  std::set<std::string> species;
  for (const auto& e : exts) {
    EXPECT_EQ(e.conclusions.size(), 2u);
    for (const char* s : {"S1", "S2", "S3"}) {
      if (ExtensionEntails(t, e, At(t.parsed.kb, s))) species.insert(s);
    }
    // Frozen from tests/derive/derive_values.py.
    EXPECT_EQ(e.final_proportion.value, Q(1, 3));
  }
  EXPECT_EQ(species.size(), 3u);
}

TEST(ReiterExtensions, NoRulesGivesEmptyExtension) {
  const Theory t(testing::LoadData("bird.kb"));
  const auto exts = ReiterExtensions(t.counter, t.parsed.evidence, {});
  ASSERT_EQ(exts.size(), 1u);
  EXPECT_TRUE(exts[0].conclusions.empty());
  EXPECT_EQ(exts[0].final_proportion.value, Q(1));
}

TEST(ReiterExtensions, SelfBlockingSingleSpecies) {
  const Theory t = Lottery(1);
  const auto exts = ReiterExtensions(t.counter, t.parsed.evidence, t.parsed.rules);
  ASSERT_EQ(exts.size(), 1u);
  EXPECT_TRUE(exts[0].conclusions.empty());
}

TEST(ReiterExtensions, RejectsNonGroundedCandidate) {
  // A : B / B with nothing supporting A has no application; the only
  // extension is empty.
  const Theory t(ParseKb(
      "domain 2\npred A B\nconst a\ndefault A : B / B\ndefault B : A / A\n"));
  const auto exts = ReiterExtensions(t.counter, {}, t.parsed.rules);
  ASSERT_EQ(exts.size(), 1u);
  EXPECT_TRUE(exts[0].conclusions.empty());
}

TEST(ReiterExtensions, SemiNormalWithNoExtensionCandidates) {
  // true : !A / A defeats itself: applying it refutes its justification, and
  // not applying it leaves it applicable. No extension exists.
  const Theory t(ParseKb("domain 2\npred A\nconst a\ndefault true : !A / A\n"));
  EXPECT_TRUE(ReiterExtensions(t.counter, {}, t.parsed.rules).empty());
}

TEST(ReiterExtensions, InconsistentEvidenceThrows) {
  ParsedKb p = testing::LoadData("bird.kb");
  p.kb.domain_size = 4;
  const Theory t(std::move(p));
  EXPECT_THROW(ReiterExtensions(t.counter, t.parsed.evidence, t.parsed.rules),
               Error);
}

TEST(ThresholdedExtension, LotteryThreeStopsEarly) {
  const Theory t = Lottery(3);
  ThresholdOptions o;
  o.epsilon_star = Q(1, 2);
  const Extension e =
      ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  // Frozen from tests/derive/derive_values.py: 2/3 clears 1/2, 1/2 does not.
  ASSERT_EQ(e.trace.size(), 1u);
  EXPECT_EQ(e.trace[0].proportion.value, Q(2, 3));
  EXPECT_EQ(e.final_proportion.value, Q(2, 3));
  ASSERT_EQ(e.below_threshold.size(), 2u);
  EXPECT_EQ(e.below_threshold[0].proportion.value, Q(1, 2));
}

TEST(ThresholdedExtension, TenthThresholdFiresNothingInSmallLottery) {
  // By symmetry P(!S_i(a) | B(a)) = 1 - 1/n, never above 9/10 for n = 3.
  const Theory t = Lottery(3);
  ThresholdOptions o;
  o.epsilon_star = Q(1, 10);
  const Extension e =
      ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  EXPECT_TRUE(e.trace.empty());
  EXPECT_EQ(e.below_threshold.size(), 3u);
  EXPECT_EQ(e.final_proportion.value, Q(1));
}

TEST(ThresholdedExtension, EpsilonOneMatchesReiter) {
  const Theory t = Lottery(3);
  ThresholdOptions o;
  o.epsilon_star = Q(1);
  const Extension e =
      ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  EXPECT_EQ(e.conclusions.size(), 2u);
  const auto exts = ReiterExtensions(t.counter, t.parsed.evidence, t.parsed.rules);
  bool matched = false;
  for (const auto& r : exts) {
    std::set<GroundFormula> a(e.conclusions.begin(), e.conclusions.end());
    std::set<GroundFormula> b(r.conclusions.begin(), r.conclusions.end());
    matched = matched || a == b;
  }
  EXPECT_TRUE(matched);
}

TEST(ThresholdedExtension, OrderingPolicies) {
  const Theory t = Lottery(4);
  ThresholdOptions o;
  o.epsilon_star = Q(1, 2);
  o.ordering.policy = OrderPolicy::kDeclared;
  Extension e =
      ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  ASSERT_EQ(e.trace.size(), 2u);
  EXPECT_EQ(e.trace[0].rule.rule_index, 0u);
  EXPECT_EQ(e.trace[1].rule.rule_index, 1u);

  o.ordering.policy = OrderPolicy::kExplicit;
  o.ordering.priority = {3, 1};
  e = ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  ASSERT_EQ(e.trace.size(), 2u);
  EXPECT_EQ(e.trace[0].rule.rule_index, 3u);
  EXPECT_EQ(e.trace[1].rule.rule_index, 1u);
  EXPECT_EQ(e.trace[0].proportion.value, Q(3, 4));
  EXPECT_EQ(e.trace[1].proportion.value, Q(2, 3));
}

TEST(ThresholdedExtension, StrictVersusInclusive) {
  const Theory t = Lottery(3);
  ThresholdOptions o;
  o.epsilon_star = Q(1, 3);  // 1 - eps = 2/3, exactly the first proportion
  EXPECT_TRUE(ThresholdedExtension(t.counter, t.parsed.evidence,
                                   t.parsed.rules, o)
                  .trace.empty());
  o.strict = false;
  EXPECT_EQ(ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o)
                .trace.size(),
            1u);
}

TEST(ThresholdedExtension, NoRules) {
  const Theory t(testing::LoadData("bird.kb"));
  const Extension e = ThresholdedExtension(t.counter, t.parsed.evidence, {}, {});
  EXPECT_TRUE(e.trace.empty());
  EXPECT_EQ(e.final_proportion.value, Q(1));
}

TEST(DeltaValidCheck, BirdRule) {
  const Theory t(testing::LoadData("bird.kb"));
  const ValidityReport r =
      DeltaValidCheck(t.parsed.rules[0], t.parsed.kb, Q(3, 20));
  EXPECT_TRUE(r.valid);
  // Frozen from tests/derive/derive_values.py.
  EXPECT_EQ(r.worst_proportion.value, Q(15, 106));
  ASSERT_TRUE(r.worst_evidence);
  EXPECT_EQ(*r.worst_evidence, (Evidence{{true, 0, 0}}));
  EXPECT_EQ(r.evidence_sets, 9u);
  EXPECT_FALSE(DeltaValidCheck(t.parsed.rules[0], t.parsed.kb, Q(1, 10)).valid);
}

TEST(DeltaValidCheck, NaiveBirdRuleFailsOnPenguins) {
  ParsedKb p = testing::LoadData("penguin_naive.kb");
  p.kb.domain_size = 7;
  const ValidityReport r = DeltaValidCheck(p.rules[0], p.kb, Q(3, 20));
  EXPECT_FALSE(r.valid);
  // Frozen from tests/derive/derive_values.py.
  EXPECT_EQ(r.worst_proportion.value, Q(7, 13));
  ASSERT_TRUE(r.worst_evidence);
  EXPECT_EQ(*r.worst_evidence, (Evidence{{true, 2, 0}}));
}

TEST(DeltaValidCheck, EntailedConsequentHasNoError) {
  const ParsedKb p = ParseKb(
      "domain 3\npred B F\nstat F | B in [1, 1]\ndefault B : F / F\n");
  const ValidityReport r = DeltaValidCheck(p.rules[0], p.kb, Q(1, 100));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.worst_proportion.value, Q(0));
}

TEST(DeltaValidCheck, Inclusiveness) {
  const Theory t(testing::LoadData("bird.kb"));
  ValidityOptions o;
  o.inclusive = false;
  EXPECT_FALSE(
      DeltaValidCheck(t.parsed.rules[0], t.parsed.kb, Q(15, 106), o).valid);
  o.inclusive = true;
  EXPECT_TRUE(
      DeltaValidCheck(t.parsed.rules[0], t.parsed.kb, Q(15, 106), o).valid);
}

TEST(DeltaValidCheck, RefusesOverBudget) {
  const ParsedKb p = testing::LoadData("penguin.kb");
  ValidityOptions o;
  o.bound.max_sets = 10;
  EXPECT_THROW(DeltaValidCheck(p.rules[0], p.kb, Q(3, 20), o), BudgetExceeded);
  EXPECT_EQ(EvidenceSetCount(3, 3), 27u);
  EXPECT_EQ(EvidenceSetCount(3, 1), 7u);
}

TEST(ExtensionProportion, MatchesOracle) {
  const Theory t = Lottery(3);
  ThresholdOptions o;
  o.epsilon_star = Q(1, 2);
  const Extension e =
      ThresholdedExtension(t.counter, t.parsed.evidence, t.parsed.rules, o);
  EXPECT_EQ(ExtensionProportion(e, t.counter, t.parsed.evidence),
            oracle::ProportionOf(t.Base(), e.conclusions));
  EXPECT_EQ(ExtensionProportion(Extension{}, t.counter, t.parsed.evidence).value,
            Q(1));
}

}  // namespace
}  // namespace ddl
