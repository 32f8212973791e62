// Extensions of grounded default theories.
//
// Two constructions are offered. Classic extensions are found by exploring
// every application order and keeping the end states that reproduce
// themselves: a candidate is accepted iff closing the evidence under exactly
// the rules whose justifications it leaves consistent fires the same rules.
// Thresholded extensions fire one rule at a time and only while the rule's
// consequent holds in more than 1 - epsilon* of the models still in play,
// every accepted conclusion narrowing that set for the next step.
//
// Entailment and consistency are always decided by exact model counting over
// the knowledge base, statistical statements included.

#ifndef DDL_DEFAULT_ENGINE_H_
#define DDL_DEFAULT_ENGINE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ddl/kb.h"
#include "ddl/model_counter.h"

namespace ddl {

struct GroundRule {
  DefaultRule rule;
  std::size_t rule_index = 0;  // position in the rule list
  std::size_t constant = 0;

  GroundFormula Prerequisite() const { return {rule.prerequisite, constant}; }
  GroundFormula Consequent() const { return {rule.consequent, constant}; }
  GroundFormula Justification(std::size_t i) const {
    return {rule.justifications[i], constant};
  }
};

// Rule-major: every constant for rule 0, then rule 1, and so on.
std::vector<GroundRule> GroundRules(std::span<const DefaultRule> rules,
                                    std::size_t constants);

enum class Applicability { kApplies, kNoPrerequisite, kBlocked };

const char* ToString(Applicability a);

// kNoPrerequisite unless w entails the prerequisite, kBlocked if w entails the
// negation of some justification. Throws EmptyCondition if w has no models.
Applicability Applicable(const GroundRule& gr, const WorldState& w,
                         const ModelCounter& counter);

struct TraceEntry {
  GroundRule rule;
  // Proportion of the current models satisfying the consequent, taken just
  // before the rule fired.
  Proportion proportion;
};

struct Extension {
  std::vector<GroundFormula> conclusions;
  std::vector<TraceEntry> trace;
  // Models of K, E and all conclusions over models of K and E.
  Proportion final_proportion;
  // Thresholded runs only: rules that still applied when the run stopped but
  // sat at or below the threshold.
  std::vector<TraceEntry> below_threshold;
};

// Largest grounded rule set ReiterExtensions accepts.
inline constexpr std::size_t kMaxGroundRules = 24;

// All classic extensions, in discovery order (rules tried in declaration
// order). Throws Error if K and E are inconsistent or the grounding exceeds
// kMaxGroundRules.
std::vector<Extension> ReiterExtensions(const ModelCounter& counter,
                                        const Evidence& evidence,
                                        std::span<const DefaultRule> rules);

enum class OrderPolicy { kGreedy, kDeclared, kExplicit };

struct Ordering {
  OrderPolicy policy = OrderPolicy::kGreedy;
  // For kExplicit: rule indices in priority order; unlisted rules follow in
  // declaration order.
  std::vector<std::size_t> priority;
};

struct ThresholdOptions {
  Rational epsilon_star{1, 10};
  Ordering ordering;
  // Fire only when p > 1 - epsilon*; when false, p >= 1 - epsilon* suffices.
  bool strict = true;
};

// Throws Error if K and E are inconsistent.
Extension ThresholdedExtension(const ModelCounter& counter,
                               const Evidence& evidence,
                               std::span<const DefaultRule> rules,
                               const ThresholdOptions& options);

struct EvidenceBound {
  // Evidence sets are drawn over the first `constants` declared constants.
  std::size_t constants = std::numeric_limits<std::size_t>::max();
  std::size_t max_literals = std::numeric_limits<std::size_t>::max();
  // Refuse (BudgetExceeded) rather than enumerate more sets than this.
  std::uint64_t max_sets = 100'000;
};

struct ValidityReport {
  bool valid = true;
  Proportion worst_proportion{0};
  std::optional<Evidence> worst_evidence;
  std::optional<std::size_t> worst_constant;
  std::uint64_t evidence_sets = 0;
  std::uint64_t consistent_sets = 0;
  std::uint64_t applicable_sets = 0;
};

struct ValidityOptions {
  EvidenceBound bound;
  // Error proportion must be <= delta (true) or < delta (false).
  bool inclusive = true;
  CountOptions count;
};

// Enumerates every ground-literal evidence set over the knowledge base's
// predicates and the bounded constants (a fresh constant is used if none is
// declared), and for each consistent one to which the rule applies at some
// constant, measures the proportion of models falsifying the consequent.
ValidityReport DeltaValidCheck(const DefaultRule& rule,
                               const KnowledgeBase& kb, const Rational& delta,
                               const ValidityOptions& options = {});

// Number of evidence sets DeltaValidCheck would enumerate.
std::uint64_t EvidenceSetCount(std::size_t atoms, std::size_t max_literals);

// Models of K, E and the extension's conclusions over models of K and E.
Proportion ExtensionProportion(const Extension& ext,
                               const ModelCounter& counter,
                               const Evidence& evidence);

}  // namespace ddl

#endif  // DDL_DEFAULT_ENGINE_H_
