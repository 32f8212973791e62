// Domain types of a default theory over a monadic vocabulary: symbols,
// statistical statements, default rules, the background knowledge base and
// threshold configuration.

#ifndef DDL_KB_H_
#define DDL_KB_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddl/formula.h"
#include "ddl/rational.h"

namespace ddl {

struct PredicateSym {
  std::string name;
  std::size_t index = 0;

  friend bool operator==(const PredicateSym&, const PredicateSym&) = default;
};

struct ConstantSym {
  std::string name;
  std::size_t index = 0;

  friend bool operator==(const ConstantSym&, const ConstantSym&) = default;
};

// A formula instantiated at a constant, e.g. (Bird & !Penguin)(a).
struct GroundFormula {
  Formula formula;
  std::size_t constant = 0;

  GroundFormula Negated() const { return {formula.Negated(), constant}; }

  friend bool operator==(const GroundFormula&, const GroundFormula&) = default;
  friend auto operator<=>(const GroundFormula&, const GroundFormula&) = default;
};

struct GroundLiteral {
  bool positive = true;
  std::size_t predicate = 0;
  std::size_t constant = 0;

  GroundFormula AsFormula() const;

  friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
  friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
};

using Evidence = std::vector<GroundLiteral>;

// %x(target, reference, lower, upper): the fraction of reference-elements that
// satisfy target lies in [lower, upper].
struct StatStatement {
  Formula target;
  Formula reference;
  Rational lower;
  Rational upper;

  // %x(!target, reference, 1 - upper, 1 - lower).
  StatStatement Complement() const;

  friend bool operator==(const StatStatement&, const StatStatement&) = default;
};

struct RuleOrigin {
  enum class Kind { kDeclared, kGenerated };

  Kind kind = Kind::kDeclared;
  // One of 1a..3c for generated rules, "single" for the plain rule from an
  // unpartnered statement, "lottery" for the species schema.
  std::string case_tag;
  std::vector<StatStatement> sources;

  friend bool operator==(const RuleOrigin&, const RuleOrigin&) = default;
};

// prerequisite : justifications / consequent, read as a schema over one
// variable and instantiated at constants by the engine.
struct DefaultRule {
  Formula prerequisite;
  std::vector<Formula> justifications;
  Formula consequent;
  RuleOrigin origin;

  // Structural identity ignoring origin and justification order.
  bool SameShape(const DefaultRule& other) const;

  // Highest lower bound among the source statements; nullopt for rules that
  // were not generated from statistics.
  std::optional<Rational> SourceLowerBound() const;

  friend bool operator==(const DefaultRule&, const DefaultRule&) = default;
};

struct KnowledgeBase {
  std::size_t domain_size = 1;
  std::vector<PredicateSym> predicates;
  std::vector<ConstantSym> constants;
  std::vector<Formula> axioms;
  std::vector<StatStatement> stats;
  // Whether a statistical statement with an empty reference class holds.
  bool vacuous_reference_holds = true;

  std::size_t AddPredicate(std::string name);
  std::size_t AddConstant(std::string name);
  std::optional<std::size_t> FindPredicate(std::string_view name) const;
  std::optional<std::size_t> FindConstant(std::string_view name) const;

  std::vector<std::string> PredicateNames() const;

  std::string Render(const Formula& f) const;
  std::string Render(const GroundFormula& g) const;
  std::string Render(const GroundLiteral& l) const;
  std::string Render(const StatStatement& s) const;
  std::string Render(const DefaultRule& r) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

struct ThresholdConfig {
  std::optional<Rational> delta;
  std::optional<Rational> epsilon_star;

  static inline const Rational kDefaultDelta{1, 20};
  static inline const Rational kDefaultEpsilonStar{1, 10};

  Rational Delta() const { return delta.value_or(kDefaultDelta); }
  Rational EpsilonStar() const {
    return epsilon_star.value_or(kDefaultEpsilonStar);
  }

  friend bool operator==(const ThresholdConfig&,
                         const ThresholdConfig&) = default;
};

}  // namespace ddl

#endif  // DDL_KB_H_
