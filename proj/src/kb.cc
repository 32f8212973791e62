#include "ddl/kb.h"

#include <algorithm>

namespace ddl {

GroundFormula GroundLiteral::AsFormula() const {
  Formula atom = Formula::Atom(predicate);
  return {positive ? atom : Formula::Not(atom), constant};
}

StatStatement StatStatement::Complement() const {
  return {target.Negated(), reference, Rational(1) - upper,
          Rational(1) - lower};
}

bool DefaultRule::SameShape(const DefaultRule& other) const {
  if (prerequisite != other.prerequisite || consequent != other.consequent) {
    return false;
  }
  auto a = justifications;
  auto b = other.justifications;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::optional<Rational> DefaultRule::SourceLowerBound() const {
  if (origin.sources.empty()) return std::nullopt;
  Rational best = origin.sources.front().lower;
  for (const auto& s : origin.sources) best = std::max(best, s.lower);
  return best;
}

std::size_t KnowledgeBase::AddPredicate(std::string name) {
  const std::size_t index = predicates.size();
  predicates.push_back({std::move(name), index});
  return index;
}

std::size_t KnowledgeBase::AddConstant(std::string name) {
  const std::size_t index = constants.size();
  constants.push_back({std::move(name), index});
  return index;
}

std::optional<std::size_t> KnowledgeBase::FindPredicate(
    std::string_view name) const {
  for (const auto& p : predicates) {
    if (p.name == name) return p.index;
  }
  return std::nullopt;
}

std::optional<std::size_t> KnowledgeBase::FindConstant(
    std::string_view name) const {
  for (const auto& c : constants) {
    if (c.name == name) return c.index;
  }
  return std::nullopt;
}

std::vector<std::string> KnowledgeBase::PredicateNames() const {
  std::vector<std::string> names;
  names.reserve(predicates.size());
  for (const auto& p : predicates) names.push_back(p.name);
  return names;
}

std::string KnowledgeBase::Render(const Formula& f) const {
  const auto names = PredicateNames();
  return f.ToString(names);
}

std::string KnowledgeBase::Render(const GroundFormula& g) const {
  const std::string c = g.constant < constants.size()
                            ? constants[g.constant].name
                            : "c" + std::to_string(g.constant);
  const auto kind = g.formula.kind();
  if (kind == Formula::Kind::kAtom) return Render(g.formula) + "(" + c + ")";
  if (kind == Formula::Kind::kNot &&
      g.formula.operand().kind() == Formula::Kind::kAtom) {
    return "!" + Render(g.formula.operand()) + "(" + c + ")";
  }
  return "(" + Render(g.formula) + ")(" + c + ")";
}

std::string KnowledgeBase::Render(const GroundLiteral& l) const {
  return Render(l.AsFormula());
}

std::string KnowledgeBase::Render(const StatStatement& s) const {
  std::string target = Render(s.target);
  if (target.find('|') != std::string::npos) target = "(" + target + ")";
  return target + " | " + Render(s.reference) + " in [" +
         FormatRational(s.lower) + ", " + FormatRational(s.upper) + "]";
}

std::string KnowledgeBase::Render(const DefaultRule& r) const {
  std::string out = Render(r.prerequisite) + " : ";
  for (std::size_t i = 0; i < r.justifications.size(); ++i) {
    if (i > 0) out += ", ";
    out += Render(r.justifications[i]);
  }
  return out + " / " + Render(r.consequent);
}

}  // namespace ddl
