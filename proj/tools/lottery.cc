#include "lottery.h"

#include <algorithm>

#include "ddl/errors.h"

namespace ddl::cli {

Rational LotteryLower(const LotterySpec& spec) {
  return spec.lower.value_or(Rational(0));
}

Rational LotteryUpper(const LotterySpec& spec) {
  if (spec.upper) return *spec.upper;
  return std::min(Rational(1), Rational(2, static_cast<long>(spec.n)));
}

ParsedKb MakeLottery(const LotterySpec& spec) {
  if (spec.n < 1) throw Error("lottery needs at least one species");
  if (spec.n + 1 > kMaxPredicates) throw Error("too many species");
  ParsedKb out;
  KnowledgeBase& kb = out.kb;
  kb.domain_size = spec.domain;
  const std::size_t genus = kb.AddPredicate("B");
  std::vector<std::size_t> species;
  for (std::size_t i = 1; i <= spec.n; ++i) {
    species.push_back(kb.AddPredicate("S" + std::to_string(i)));
  }
  const std::size_t a = kb.AddConstant("a");

  for (std::size_t i = 0; i < spec.n && spec.n > 1; ++i) {
    std::vector<Formula> others;
    for (std::size_t j = 0; j < spec.n; ++j) {
      if (j != i) others.push_back(Formula::Not(Formula::Atom(species[j])));
    }
    kb.axioms.push_back(
        Formula::Implies(Formula::Atom(species[i]), Formula::AndAll(others)));
  }
  std::vector<Formula> all;
  for (std::size_t s : species) all.push_back(Formula::Atom(s));
  kb.axioms.push_back(
      Formula::Iff(Formula::Atom(genus), Formula::OrAll(all)));

  const Rational lo = LotteryLower(spec);
  const Rational hi = LotteryUpper(spec);
  if (lo < 0 || hi > 1 || lo > hi) throw Error("malformed species interval");
  for (std::size_t s : species) {
    kb.stats.push_back({Formula::Atom(s), Formula::Atom(genus), lo, hi});
  }
  out.evidence.push_back({true, genus, a});
  for (std::size_t s : species) {
    const Formula neg = Formula::Not(Formula::Atom(s));
    DefaultRule r;
    r.prerequisite = Formula::Atom(genus);
    r.justifications = {neg};
    r.consequent = neg;
    out.rules.push_back(std::move(r));
  }
  if (hi > 0 && hi < 1) out.config.delta = hi;
  out.config.epsilon_star = spec.epsilon_star;
  return out;
}

}  // namespace ddl::cli
