#include "ddl/default_engine.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "ddl/errors.h"

namespace ddl {

namespace {

bool JustificationsHold(const GroundRule& gr, const WorldState& w,
                        const ModelCounter& counter) {
  for (std::size_t i = 0; i < gr.rule.justifications.size(); ++i) {
    if (counter.Entails(w, gr.Justification(i).Negated())) return false;
  }
  return true;
}

WorldState Apply(const WorldState& base, const std::vector<GroundRule>& ground,
                 const std::vector<std::size_t>& order) {
  WorldState w = base;
  for (std::size_t i : order) w.facts.push_back(ground[i].Consequent());
  return w;
}

// Closure of the evidence under the rules whose justifications `final_state`
// leaves consistent. Returns the set of rules that end up firing.
std::uint64_t GroundedClosure(const std::vector<GroundRule>& ground,
                              const WorldState& base,
                              const WorldState& final_state,
                              const ModelCounter& counter) {
  std::uint64_t usable = 0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (JustificationsHold(ground[i], final_state, counter)) {
      usable |= std::uint64_t{1} << i;
    }
  }
  std::uint64_t fired = 0;
  WorldState w = base;
  bool progress = true;
  while (progress) {
    progress = false;
    if (!counter.Consistent(w)) break;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((fired & bit) || !(usable & bit)) continue;
      if (counter.Entails(w, ground[i].Prerequisite())) {
        fired |= bit;
        w.facts.push_back(ground[i].Consequent());
        progress = true;
      }
    }
  }
  return fired;
}

Extension MakeExtension(const std::vector<GroundRule>& ground,
                        const std::vector<std::size_t>& order,
                        const WorldState& base, const ModelCounter& counter) {
  Extension ext;
  WorldState w = base;
  for (std::size_t i : order) {
    const GroundFormula c = ground[i].Consequent();
    ext.trace.push_back({ground[i], counter.ProportionOf(w, c)});
    ext.conclusions.push_back(c);
    w.facts.push_back(c);
  }
  ext.final_proportion = counter.ProportionOf(base, ext.conclusions);
  return ext;
}

class ReiterSearch {
 public:
  ReiterSearch(const ModelCounter& counter, WorldState base,
               std::vector<GroundRule> ground)
      : counter_(counter), base_(std::move(base)), ground_(std::move(ground)) {}

  std::vector<Extension> Run() {
    std::vector<std::size_t> order;
    Visit(0, order);
    return std::move(found_);
  }

 private:
  void Visit(std::uint64_t applied, std::vector<std::size_t>& order) {
    if (!seen_.insert(applied).second) return;
    const WorldState w = Apply(base_, ground_, order);
    if (!counter_.Consistent(w)) return;
    bool leaf = true;
    for (std::size_t i = 0; i < ground_.size(); ++i) {
      if (applied & (std::uint64_t{1} << i)) continue;
      if (Applicable(ground_[i], w, counter_) != Applicability::kApplies) {
        continue;
      }
      leaf = false;
      order.push_back(i);
      Visit(applied | (std::uint64_t{1} << i), order);
      order.pop_back();
    }
    if (!leaf) return;
    if (GroundedClosure(ground_, base_, w, counter_) != applied) return;
    std::set<GroundFormula> key;
    for (std::size_t i : order) key.insert(ground_[i].Consequent());
    if (!keys_.insert(key).second) return;
    found_.push_back(MakeExtension(ground_, order, base_, counter_));
  }

  const ModelCounter& counter_;
  WorldState base_;
  std::vector<GroundRule> ground_;
  std::unordered_set<std::uint64_t> seen_;
  std::set<std::set<GroundFormula>> keys_;
  std::vector<Extension> found_;
};

std::size_t PriorityRank(const Ordering& ordering, std::size_t rule_index) {
  const auto it = std::find(ordering.priority.begin(), ordering.priority.end(),
                            rule_index);
  if (it != ordering.priority.end()) {
    return static_cast<std::size_t>(it - ordering.priority.begin());
  }
  return ordering.priority.size() + rule_index;
}

}  // namespace

std::vector<GroundRule> GroundRules(std::span<const DefaultRule> rules,
                                    std::size_t constants) {
  std::vector<GroundRule> out;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (std::size_t c = 0; c < constants; ++c) {
      out.push_back({rules[r], r, c});
    }
  }
  return out;
}

const char* ToString(Applicability a) {
  switch (a) {
    case Applicability::kApplies:
      return "applies";
    case Applicability::kNoPrerequisite:
      return "no_prerequisite";
    case Applicability::kBlocked:
      return "blocked";
  }
  return "?";
}

Applicability Applicable(const GroundRule& gr, const WorldState& w,
                         const ModelCounter& counter) {
  if (!counter.Entails(w, gr.Prerequisite())) {
    return Applicability::kNoPrerequisite;
  }
  if (!JustificationsHold(gr, w, counter)) return Applicability::kBlocked;
  return Applicability::kApplies;
}

std::vector<Extension> ReiterExtensions(const ModelCounter& counter,
                                        const Evidence& evidence,
                                        std::span<const DefaultRule> rules) {
  WorldState base = WorldState::FromEvidence(counter.kb_ptr(), evidence);
  if (!counter.Consistent(base)) {
    throw Error("knowledge base and evidence are inconsistent");
  }
  std::vector<GroundRule> ground =
      GroundRules(rules, counter.kb().constants.size());
  if (ground.size() > kMaxGroundRules) {
    throw Error("grounding has " + std::to_string(ground.size()) +
                " rules; at most " + std::to_string(kMaxGroundRules) +
                " are supported");
  }
  return ReiterSearch(counter, std::move(base), std::move(ground)).Run();
}

Extension ThresholdedExtension(const ModelCounter& counter,
                               const Evidence& evidence,
                               std::span<const DefaultRule> rules,
                               const ThresholdOptions& options) {
  const WorldState base = WorldState::FromEvidence(counter.kb_ptr(), evidence);
  if (!counter.Consistent(base)) {
    throw Error("knowledge base and evidence are inconsistent");
  }
  const std::vector<GroundRule> ground =
      GroundRules(rules, counter.kb().constants.size());
  const Rational floor = Rational(1) - options.epsilon_star;
  const auto clears = [&](const Rational& p) {
    if (p == 0) return false;  // would leave no models at all
    return options.strict ? p > floor : p >= floor;
  };

  Extension ext;
  WorldState w = base;
  std::vector<bool> fired(ground.size(), false);
  while (true) {
    std::vector<TraceEntry> firing;
    std::vector<TraceEntry> stalled;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (fired[i]) continue;
      if (Applicable(ground[i], w, counter) != Applicability::kApplies) continue;
      TraceEntry e{ground[i], counter.ProportionOf(w, ground[i].Consequent())};
      (clears(e.proportion.value) ? firing : stalled).push_back(std::move(e));
    }
    if (firing.empty()) {
      ext.below_threshold = std::move(stalled);
      break;
    }
    // Ground order is rule-major, so the first of equals is the declared one.
    auto pick = firing.begin();
    switch (options.ordering.policy) {
      case OrderPolicy::kGreedy:
        for (auto it = firing.begin(); it != firing.end(); ++it) {
          if (it->proportion.value > pick->proportion.value) pick = it;
        }
        break;
      case OrderPolicy::kDeclared:
        break;
      case OrderPolicy::kExplicit:
        for (auto it = firing.begin(); it != firing.end(); ++it) {
          if (PriorityRank(options.ordering, it->rule.rule_index) <
              PriorityRank(options.ordering, pick->rule.rule_index)) {
            pick = it;
          }
        }
        break;
    }
    const GroundFormula c = pick->rule.Consequent();
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (ground[i].rule_index == pick->rule.rule_index &&
          ground[i].constant == pick->rule.constant) {
        fired[i] = true;
      }
    }
    ext.conclusions.push_back(c);
    ext.trace.push_back(std::move(*pick));
    w.facts.push_back(c);
  }
  ext.final_proportion = counter.ProportionOf(base, ext.conclusions);
  return ext;
}

std::uint64_t EvidenceSetCount(std::size_t atoms, std::size_t max_literals) {
  // sum_j C(atoms, j) 2^j, saturating.
  Integer total = 0;
  Integer choose = 1;
  Integer pow2 = 1;
  for (std::size_t j = 0; j <= std::min(atoms, max_literals); ++j) {
    total += choose * pow2;
    choose = choose * (atoms - j) / (j + 1);
    pow2 *= 2;
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total);
}

ValidityReport DeltaValidCheck(const DefaultRule& rule,
                               const KnowledgeBase& kb, const Rational& delta,
                               const ValidityOptions& options) {
  auto owned = std::make_shared<KnowledgeBase>(kb);
  if (owned->constants.empty()) owned->AddConstant("a");
  const std::size_t constants =
      std::max<std::size_t>(1, std::min(owned->constants.size(),
                                         options.bound.constants));
  const std::size_t predicates = owned->predicates.size();
  const std::size_t atoms = predicates * constants;
  const std::uint64_t sets =
      EvidenceSetCount(atoms, options.bound.max_literals);
  if (sets > options.bound.max_sets) {
    throw BudgetExceeded("evidence enumeration needs " + std::to_string(sets) +
                         " sets; bound is " +
                         std::to_string(options.bound.max_sets));
  }

  const ModelCounter counter(owned, options.count);
  const std::vector<GroundRule> ground =
      GroundRules(std::span<const DefaultRule>(&rule, 1), constants);

  ValidityReport report;
  // digit: 0 absent, 1 positive, 2 negative; atom i is predicate i % k at
  // constant i / k.
  std::vector<int> digit(atoms, 0);
  while (true) {
    std::size_t literals = 0;
    for (int d : digit) literals += d != 0;
    if (literals <= options.bound.max_literals) {
      Evidence e;
      for (std::size_t i = 0; i < atoms; ++i) {
        if (digit[i] == 0) continue;
        e.push_back({digit[i] == 1, i % predicates, i / predicates});
      }
      ++report.evidence_sets;
      const WorldState w = WorldState::FromEvidence(owned, e);
      if (counter.Consistent(w)) {
        ++report.consistent_sets;
        bool counted = false;
        for (const auto& gr : ground) {
          if (Applicable(gr, w, counter) != Applicability::kApplies) continue;
          if (!counted) {
            ++report.applicable_sets;
            counted = true;
          }
          const Rational err =
              counter.ProportionOf(w, gr.Consequent().Negated()).value;
          if (!report.worst_evidence || err > report.worst_proportion.value) {
            report.worst_proportion = {err};
            report.worst_evidence = e;
            report.worst_constant = gr.constant;
          }
        }
      }
    }
    std::size_t i = 0;
    while (i < atoms && digit[i] == 2) digit[i++] = 0;
    if (i == atoms) break;
    ++digit[i];
  }
  const Rational& worst = report.worst_proportion.value;
  report.valid = options.inclusive ? worst <= delta : worst < delta;
  return report;
}

Proportion ExtensionProportion(const Extension& ext,
                               const ModelCounter& counter,
                               const Evidence& evidence) {
  const WorldState base = WorldState::FromEvidence(counter.kb_ptr(), evidence);
  return counter.ProportionOf(base, ext.conclusions);
}

}  // namespace ddl
