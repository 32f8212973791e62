// Property checks over randomly generated theories.

#include <gtest/gtest.h>

#include <algorithm>

#include "ddl/default_engine.h"
#include "ddl/oracle.h"
#include "ddl/rule_forge.h"
#include "lottery.h"
#include "random_kb.h"
#include "test_util.h"

namespace ddl {
namespace {

using testing::Q;
using testing::RandomShape;
using testing::RandomTheories;
using testing::Share;

TEST(Properties, CounterMatchesOracle) {
  RandomTheories gen(11);
  for (int i = 0; i < 150; ++i) {
    const KnowledgeBase kb = gen.Kb(RandomShape{});
    const auto ptr = Share(kb);
    const WorldState w{ptr, gen.Facts(kb, 3)};
    const ModelCounter counter(ptr);
    const Integer fast = counter.Count(w).value;
    ASSERT_EQ(fast, oracle::Count(w)) << i;
    if (fast == 0 || kb.constants.empty()) continue;
    const GroundFormula q = gen.Ground(kb);
    ASSERT_EQ(counter.ProportionOf(w, q), oracle::ProportionOf(w, q)) << i;
  }
}

TEST(Properties, ProportionBoundsAndComplement) {
  RandomTheories gen(12);
  for (int i = 0; i < 150; ++i) {
    RandomShape shape;
    shape.max_domain = 6;
    const KnowledgeBase kb = gen.Kb(shape);
    if (kb.constants.empty()) continue;
    const auto ptr = Share(kb);
    const ModelCounter counter(ptr);
    const WorldState w{ptr, gen.Facts(kb, 2)};
    const Integer total = counter.Count(w).value;
    const GroundFormula q = gen.Ground(kb);
    const Integer with_q = counter.Count(w.With(q)).value;
    ASSERT_LE(with_q, total);
    if (total == 0) continue;
    const Rational p = counter.ProportionOf(w, q).value;
    const Rational np = counter.ProportionOf(w, q.Negated()).value;
    ASSERT_GE(p, 0);
    ASSERT_LE(p, 1);
    ASSERT_EQ(p + np, 1);
  }
}

std::vector<DefaultRule> Shapes(const CandidateSet& cs) {
  return cs.candidates;
}

// Rule equality up to equivalence over feasible cells; coextensive
// references make the syntactic choice order dependent.
bool SameRule(const KnowledgeBase& kb, const DefaultRule& r,
              const DefaultRule& s) {
  if (!Equivalent(kb, r.prerequisite, s.prerequisite) ||
      !Equivalent(kb, r.consequent, s.consequent) ||
      r.justifications.size() != s.justifications.size()) {
    return false;
  }
  for (const auto& j : r.justifications) {
    if (std::none_of(s.justifications.begin(), s.justifications.end(),
                     [&](const Formula& k) { return Equivalent(kb, j, k); })) {
      return false;
    }
  }
  return true;
}

bool SameShapes(const KnowledgeBase& kb, const std::vector<DefaultRule>& a,
                const std::vector<DefaultRule>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& r : a) {
    if (std::none_of(b.begin(), b.end(),
                     [&](const DefaultRule& s) { return SameRule(kb, r, s); })) {
      return false;
    }
  }
  return true;
}

TEST(Properties, RecipeNegationClosure) {
  RandomTheories gen(13);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 60; ++i) {
    RandomShape shape;
    shape.max_stats = 3;
    KnowledgeBase kb = gen.Kb(shape);
    if (kb.stats.empty()) continue;
    // Rewrite every statement on the first target's atom in terms of its
    // negation; the recipe must not notice.
    const Formula phi = kb.stats[0].target;
    KnowledgeBase flipped = kb;
    for (auto& s : flipped.stats) s = s.Complement();
    for (const Formula& t : {phi, phi.Negated()}) {
      const auto a = Shapes(GenerateCandidates(kb, t));
      const auto b = Shapes(GenerateCandidates(flipped, t));
      std::string why;
      for (const auto& s : kb.stats) why += " stat " + kb.Render(s) + ";";
      for (const auto& r : a) why += " | " + kb.Render(r);
      why += " vs";
      for (const auto& r : b) why += " | " + kb.Render(r);
      ASSERT_TRUE(SameShapes(kb, a, b)) << i << why;
    }
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Properties, ThresholdTraceInvariants) {
  for (std::size_t n : {3u, 4u, 5u}) {
    cli::LotterySpec spec;
    spec.n = n;
    spec.domain = 9;
    const ParsedKb p = cli::MakeLottery(spec);
    const auto kb = Share(p.kb);
    const ModelCounter counter(kb);
    for (const Rational& eps : {Q(1, 2), Q(3, 4), Q(1)}) {
      ThresholdOptions o;
      o.epsilon_star = eps;
      const Extension e = ThresholdedExtension(counter, p.evidence, p.rules, o);
      WorldState w = WorldState::FromEvidence(kb, p.evidence);
      Integer previous = counter.Count(w).value;
      for (const auto& t : e.trace) {
        EXPECT_GT(t.proportion.value, 1 - eps);
        EXPECT_EQ(counter.ProportionOf(w, t.rule.Consequent()), t.proportion);
        const bool entailed = counter.Entails(w, t.rule.Consequent());
        w = w.With(t.rule.Consequent());
        const Integer now = counter.Count(w).value;
        if (!entailed) EXPECT_LT(now, previous);
        previous = now;
      }
      for (const auto& b : e.below_threshold) {
        EXPECT_LE(b.proportion.value, 1 - eps);
      }
    }
  }
}

TEST(Properties, LotteryBlockingGrows) {
  cli::LotterySpec spec;
  spec.n = 5;
  spec.domain = 10;
  const ParsedKb p = cli::MakeLottery(spec);
  const auto kb = Share(p.kb);
  const ModelCounter counter(kb);
  WorldState w = WorldState::FromEvidence(kb, p.evidence);
  const GroundFormula last{Formula::Atom(5), 0};
  Rational previous = counter.ProportionOf(w, last).value;
  for (std::size_t s = 1; s < 5; ++s) {
    w = w.With(GroundFormula{Formula::Not(Formula::Atom(s)), 0});
    const Rational now = counter.ProportionOf(w, last).value;
    EXPECT_GE(now, previous);
    previous = now;
  }
  EXPECT_EQ(previous, Q(1));
}

}  // namespace
}  // namespace ddl
