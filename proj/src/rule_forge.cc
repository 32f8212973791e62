#include "ddl/rule_forge.h"

#include <algorithm>

#include "ddl/errors.h"
#include "ddl/model_counter.h"

namespace ddl {

namespace {

DefaultRule Generated(const Formula& prerequisite,
                      std::vector<Formula> justifications,
                      const Formula& consequent, std::string tag,
                      std::vector<StatStatement> sources) {
  DefaultRule r;
  r.prerequisite = prerequisite;
  r.justifications = std::move(justifications);
  r.consequent = consequent;
  r.origin.kind = RuleOrigin::Kind::kGenerated;
  r.origin.case_tag = std::move(tag);
  r.origin.sources = std::move(sources);
  return r;
}

void AddCandidate(CandidateSet& cs, DefaultRule rule) {
  for (const auto& existing : cs.candidates) {
    if (existing.SameShape(rule)) return;
  }
  cs.candidates.push_back(std::move(rule));
}

}  // namespace

bool EntailsSubset(const KnowledgeBase& kb, const Formula& narrow,
                   const Formula& wide) {
  for (Cell c : FeasibleCells(kb)) {
    if (narrow.Eval(c) && !wide.Eval(c)) return false;
  }
  return true;
}

bool Equivalent(const KnowledgeBase& kb, const Formula& a, const Formula& b) {
  for (Cell c : FeasibleCells(kb)) {
    if (a.Eval(c) != b.Eval(c)) return false;
  }
  return true;
}

std::vector<StatStatement> StatsForTarget(const KnowledgeBase& kb,
                                          const Formula& target) {
  std::vector<StatStatement> out;
  const auto add = [&](StatStatement s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) {
      out.push_back(std::move(s));
    }
  };
  const Formula negated = target.Negated();
  for (const auto& s : kb.stats) {
    if (Equivalent(kb, s.target, target)) add(s);
  }
  for (const auto& s : kb.stats) {
    if (Equivalent(kb, s.target, negated)) add(s.Complement());
  }
  return out;
}

char IntervalSubcase(const Rational& p, const Rational& q, const Rational& p2,
                     const Rational& q2) {
  if ((p <= p2 && q <= q2) || (p2 <= p && q2 <= q)) return 'a';
  if (p <= p2 && q2 <= q) return 'b';
  return 'c';
}

std::string ClassifyPair(const KnowledgeBase& kb, const StatStatement& first,
                         const StatStatement& second) {
  const bool sub = EntailsSubset(kb, first.reference, second.reference);
  const bool sup = EntailsSubset(kb, second.reference, first.reference);
  if (sup && !sub) {
    return std::string("2") +
           IntervalSubcase(second.lower, second.upper, first.lower, first.upper);
  }
  return std::string(sub ? "1" : "3") +
         IntervalSubcase(first.lower, first.upper, second.lower, second.upper);
}

CandidateSet GenerateCandidates(const KnowledgeBase& kb, const Formula& target) {
  const std::vector<StatStatement> stats = StatsForTarget(kb, target);
  if (stats.empty()) {
    throw Error("no statistical statement has target " + kb.Render(target));
  }
  CandidateSet cs;
  cs.target = target;
  const Formula& phi = target;

  if (stats.size() == 1) {
    const auto& s = stats.front();
    AddCandidate(cs, Generated(s.reference, {phi}, phi, "single", {s}));
    return cs;
  }

  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (std::size_t j = i + 1; j < stats.size(); ++j) {
      const StatStatement& s = stats[i];
      const StatStatement& t = stats[j];
      const Formula& psi = s.reference;
      const Formula& psi2 = t.reference;
      const bool sub = EntailsSubset(kb, psi, psi2);
      const bool sup = EntailsSubset(kb, psi2, psi);
      const std::string tag = ClassifyPair(kb, s, t);
      const char letter = tag[1];

      if (sub && sup) {
        cs.warnings.push_back("reference classes " + kb.Render(psi) + " and " +
                              kb.Render(psi2) +
                              " are coextensive; emitting a single rule");
        AddCandidate(cs, Generated(psi, {phi}, phi, tag, {s, t}));
        continue;
      }
      if (sub || sup) {
        // Case 1 as written for (narrow, wide); case 2 is the mirror image.
        const StatStatement& narrow = sub ? s : t;
        const StatStatement& wide = sub ? t : s;
        if (letter == 'b') {
          AddCandidate(cs, Generated(wide.reference, {phi}, phi, tag, {wide}));
        } else {
          AddCandidate(cs,
                       Generated(narrow.reference, {phi}, phi, tag, {narrow}));
          AddCandidate(cs, Generated(wide.reference,
                                     {narrow.reference.Negated(), phi}, phi,
                                     tag, {wide}));
        }
        continue;
      }
      switch (letter) {
        case 'a':
          AddCandidate(cs, Generated(psi, {phi, psi2.Negated()}, phi, tag, {s}));
          AddCandidate(cs, Generated(psi2, {psi.Negated(), phi}, phi, tag, {t}));
          break;
        case 'b':
          AddCandidate(cs, Generated(psi, {phi, psi2.Negated()}, phi, tag, {s}));
          AddCandidate(cs, Generated(psi2, {phi}, phi, tag, {t}));
          break;
        default:
          AddCandidate(cs, Generated(psi2, {phi, psi.Negated()}, phi, tag, {t}));
          AddCandidate(cs, Generated(psi, {phi}, phi, tag, {s}));
          break;
      }
    }
  }
  return cs;
}

FilterResult FilterByDelta(const CandidateSet& cs, const Rational& delta) {
  FilterResult out;
  const Rational floor = Rational(1) - delta;
  for (const auto& r : cs.candidates) {
    const auto lower = r.SourceLowerBound();
    if (lower && *lower >= floor) {
      out.kept.push_back(r);
    } else {
      out.rejected.push_back(
          {r, "source lower bound " + (lower ? FormatRational(*lower) : "none") +
                  " < 1 - delta = " + FormatRational(floor)});
    }
  }
  return out;
}

std::vector<Formula> CompilationTargets(const KnowledgeBase& kb) {
  std::vector<Formula> out;
  const auto add = [&](const Formula& f) {
    for (const auto& g : out) {
      if (Equivalent(kb, f, g)) return;
    }
    out.push_back(f);
  };
  for (const auto& s : kb.stats) {
    add(s.target);
    add(s.target.Negated());
  }
  return out;
}

CompiledDefaults CompileDefaults(const KnowledgeBase& kb, const Rational& delta) {
  CompiledDefaults out;
  for (const auto& target : CompilationTargets(kb)) {
    CandidateSet cs = GenerateCandidates(kb, target);
    FilterResult fr = FilterByDelta(cs, delta);
    for (auto& r : fr.kept) {
      const bool dup = std::any_of(out.kept.begin(), out.kept.end(),
                                   [&](const DefaultRule& k) {
                                     return k.SameShape(r);
                                   });
      if (!dup) out.kept.push_back(std::move(r));
    }
    for (auto& r : fr.rejected) out.rejected.push_back(std::move(r));
    out.per_target.push_back(std::move(cs));
  }
  return out;
}

LotteryDefaults GenerateLotteryDefaults(const KnowledgeBase& kb) {
  if (kb.stats.empty()) throw SchemaMismatch("no statistical statements");
  LotteryDefaults out;
  const auto& first = kb.stats.front();
  if (first.reference.kind() != Formula::Kind::kAtom) {
    throw SchemaMismatch("reference class must be a single predicate");
  }
  out.genus = first.reference.predicate();
  Rational delta_star = 0;
  for (const auto& s : kb.stats) {
    if (s.reference.kind() != Formula::Kind::kAtom ||
        s.reference.predicate() != out.genus) {
      throw SchemaMismatch("statements do not share one reference predicate");
    }
    if (s.target.kind() != Formula::Kind::kAtom ||
        s.target.predicate() == out.genus) {
      throw SchemaMismatch("statement target is not a species predicate");
    }
    const std::size_t sp = s.target.predicate();
    if (std::find(out.species.begin(), out.species.end(), sp) !=
        out.species.end()) {
      throw SchemaMismatch("species " + kb.predicates[sp].name +
                           " has more than one statement");
    }
    out.species.push_back(sp);
    delta_star = std::max(delta_star, s.upper);
  }
  for (Cell c : FeasibleCells(kb)) {
    int members = 0;
    for (std::size_t sp : out.species) members += (c >> sp) & 1U;
    const bool genus = (c >> out.genus) & 1U;
    if (members > 1) throw SchemaMismatch("species are not mutually exclusive");
    if (genus != (members == 1)) {
      throw SchemaMismatch("species list is not exhaustive for " +
                           kb.predicates[out.genus].name);
    }
  }
  const Formula genus = Formula::Atom(out.genus);
  for (std::size_t i = 0; i < kb.stats.size(); ++i) {
    const Formula not_species = Formula::Not(Formula::Atom(out.species[i]));
    out.rules.push_back(Generated(genus, {not_species}, not_species, "lottery",
                                  {kb.stats[i].Complement()}));
  }
  out.delta_star = delta_star;
  return out;
}

}  // namespace ddl
