// Compiling default rules from statistical knowledge.
//
// For a target formula phi, every pair of statements %x(phi, psi, p, q) and
// %x(phi, psi', p', q') is classified by which reference class the axioms put
// inside the other (case 1: psi inside psi', case 2: the reverse, case 3:
// neither) and by how the two intervals relate (subcase a: one interval sits
// wholly above or below the other at both ends, b: [p, q] contains
// [p', q'], c: [p', q'] contains [p, q]; tested in that order). Each
// classification yields a fixed set of candidate rules, which are then
// filtered by the security level delta: a rule survives only if its source
// statement's lower bound is at least 1 - delta.

#ifndef DDL_RULE_FORGE_H_
#define DDL_RULE_FORGE_H_

#include <string>
#include <vector>

#include "ddl/kb.h"

namespace ddl {

struct RejectedRule {
  DefaultRule rule;
  std::string reason;
};

struct CandidateSet {
  Formula target;
  std::vector<DefaultRule> candidates;
  std::vector<RejectedRule> rejected;
  std::vector<std::string> warnings;
};

// True iff every feasible cell satisfying `narrow` satisfies `wide`. Only the
// universal axioms are consulted, never the statistical statements.
bool EntailsSubset(const KnowledgeBase& kb, const Formula& narrow,
                   const Formula& wide);

// True iff the axioms make the two formulas coextensive.
bool Equivalent(const KnowledgeBase& kb, const Formula& a, const Formula& b);

// Declared statements whose target is equivalent to `target`, followed by the
// complements of statements whose target is equivalent to its negation.
// Exact duplicates are dropped.
std::vector<StatStatement> StatsForTarget(const KnowledgeBase& kb,
                                          const Formula& target);

// Interval subcase letter ('a', 'b' or 'c') for [p, q] against [p2, q2].
char IntervalSubcase(const Rational& p, const Rational& q, const Rational& p2,
                     const Rational& q2);

// Case tag ("1a" .. "3c") for a pair of statements sharing a target.
std::string ClassifyPair(const KnowledgeBase& kb, const StatStatement& first,
                         const StatStatement& second);

// Throws Error if no statement (declared or complemented) has this target.
CandidateSet GenerateCandidates(const KnowledgeBase& kb, const Formula& target);

struct FilterResult {
  std::vector<DefaultRule> kept;
  std::vector<RejectedRule> rejected;
};

FilterResult FilterByDelta(const CandidateSet& cs, const Rational& delta);

// Distinct targets worth compiling: each statement's target and its negation,
// first occurrence kept among equivalent ones.
std::vector<Formula> CompilationTargets(const KnowledgeBase& kb);

struct CompiledDefaults {
  std::vector<CandidateSet> per_target;
  std::vector<DefaultRule> kept;
  std::vector<RejectedRule> rejected;
};

// Runs the recipe and the delta filter over every compilation target; `kept`
// is the union without structural duplicates.
CompiledDefaults CompileDefaults(const KnowledgeBase& kb, const Rational& delta);

struct LotteryDefaults {
  std::vector<DefaultRule> rules;
  Rational delta_star;
  std::size_t genus = 0;
  std::vector<std::size_t> species;
};

// Recognizes the exhaustive, mutually exclusive species schema: statements
// %x(S_i, G, lo_i, hi_i) over a common atomic reference G whose axioms make G
// equivalent to the disjunction of the S_i with at most one S_i per cell.
// Returns G : !S_i / !S_i for each i and delta* = max hi_i. Throws
// SchemaMismatch otherwise.
LotteryDefaults GenerateLotteryDefaults(const KnowledgeBase& kb);

}  // namespace ddl

#endif  // DDL_RULE_FORGE_H_
