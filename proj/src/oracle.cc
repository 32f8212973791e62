#include "ddl/oracle.h"

#include "ddl/errors.h"

namespace ddl::oracle {

namespace {

// Deliberately separate from Formula::Eval: reads predicate membership bit by
// bit from the element's cell.
bool Holds(const Formula& f, Cell cell) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
      return true;
    case K::kFalse:
      return false;
    case K::kAtom:
      return (cell & (Cell{1} << f.predicate())) != 0;
    case K::kNot:
      return !Holds(f.operand(), cell);
    case K::kAnd:
      return Holds(f.lhs(), cell) ? Holds(f.rhs(), cell) : false;
    case K::kOr:
      return Holds(f.lhs(), cell) ? true : Holds(f.rhs(), cell);
    case K::kImplies:
      return Holds(f.lhs(), cell) ? Holds(f.rhs(), cell) : true;
    case K::kIff: {
      const bool a = Holds(f.lhs(), cell);
      const bool b = Holds(f.rhs(), cell);
      return (a && b) || (!a && !b);
    }
  }
  return false;
}

std::vector<Cell> AllCells(std::size_t predicates) {
  if (predicates > kMaxPredicates) throw Error("too many predicates");
  std::vector<Cell> cells(std::size_t{1} << predicates);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<Cell>(i);
  return cells;
}

}  // namespace

ModelStream::ModelStream(std::size_t domain, std::size_t predicates,
                         std::size_t constants, std::uint64_t cap)
    : ModelStream(domain, AllCells(predicates), constants, cap) {}

ModelStream::ModelStream(std::size_t domain, std::vector<Cell> cells,
                         std::size_t constants, std::uint64_t cap)
    : domain_(domain),
      cells_(std::move(cells)),
      constants_(constants),
      cell_digit_(domain, 0),
      denote_(constants, 0) {
  Integer total = 1;
  for (std::size_t i = 0; i < domain_; ++i) total *= cells_.size();
  for (std::size_t i = 0; i < constants_; ++i) total *= domain_;
  if (total > cap) {
    throw BudgetExceeded("oracle enumeration of " + total.str() +
                         " models exceeds cap " + std::to_string(cap));
  }
  size_ = static_cast<std::uint64_t>(total);
  done_ = size_ == 0;
}

bool ModelStream::Next(ExplicitModel& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    cells_changed_ = true;
  } else {
    // Odometer: constants are the low-order digits, then elements.
    std::size_t i = constants_;
    bool carried = true;
    while (carried && i > 0) {
      --i;
      if (++denote_[i] < domain_) {
        carried = false;
      } else {
        denote_[i] = 0;
      }
    }
    cells_changed_ = carried;
    std::size_t e = domain_;
    while (carried && e > 0) {
      --e;
      if (++cell_digit_[e] < cells_.size()) {
        carried = false;
      } else {
        cell_digit_[e] = 0;
      }
    }
    if (carried) {
      done_ = true;
      return false;
    }
  }
  out.cell_of.resize(domain_);
  for (std::size_t e = 0; e < domain_; ++e) out.cell_of[e] = cells_[cell_digit_[e]];
  out.denote = denote_;
  return true;
}

bool Satisfies(const ExplicitModel& m, const Sentence& sentence,
               bool vacuous_reference_holds) {
  if (const auto* ax = std::get_if<UniversalAxiom>(&sentence)) {
    for (Cell c : m.cell_of) {
      if (!Holds(ax->formula, c)) return false;
    }
    return true;
  }
  if (const auto* st = std::get_if<StatStatement>(&sentence)) {
    std::size_t ref = 0;
    std::size_t both = 0;
    for (Cell c : m.cell_of) {
      if (Holds(st->reference, c)) {
        ++ref;
        if (Holds(st->target, c)) ++both;
      }
    }
    if (ref == 0) return vacuous_reference_holds;
    const Rational frac(both, ref);
    return st->lower <= frac && frac <= st->upper;
  }
  const auto& g = std::get<GroundFormula>(sentence);
  return Holds(g.formula, m.cell_of[m.denote[g.constant]]);
}

Tally Enumerate(const WorldState& w, std::span<const GroundFormula> queries,
                std::uint64_t cap) {
  const KnowledgeBase& kb = *w.kb;
  std::vector<Cell> allowed;
  for (Cell c : AllCells(kb.predicates.size())) {
    bool ok = true;
    for (const auto& a : kb.axioms) ok = ok && Holds(a, c);
    if (ok) allowed.push_back(c);
  }
  for (const auto& f : w.facts) {
    if (f.constant >= kb.constants.size()) throw Error("undeclared constant");
  }
  Tally tally{0, 0};
  ModelStream stream(kb.domain_size, std::move(allowed), kb.constants.size(),
                     cap);
  ExplicitModel m;
  bool stats_ok = false;
  std::uint64_t models = 0;
  std::uint64_t hits = 0;
  while (stream.Next(m)) {
    if (stream.cells_changed()) {
      stats_ok = true;
      for (const auto& s : kb.stats) {
        if (!Satisfies(m, s, kb.vacuous_reference_holds)) {
          stats_ok = false;
          break;
        }
      }
    }
    if (!stats_ok) continue;
    bool facts_ok = true;
    for (const auto& f : w.facts) {
      if (!Satisfies(m, f)) {
        facts_ok = false;
        break;
      }
    }
    if (!facts_ok) continue;
    ++models;
    bool all = true;
    for (const auto& q : queries) {
      if (!Satisfies(m, q)) {
        all = false;
        break;
      }
    }
    if (all) ++hits;
  }
  tally.models = models;
  tally.hits = hits;
  return tally;
}

Integer Count(const WorldState& w, std::uint64_t cap) {
  return Enumerate(w, {}, cap).models;
}

Proportion ProportionOf(const WorldState& w, const GroundFormula& query,
                        std::uint64_t cap) {
  return ProportionOf(w, std::span<const GroundFormula>(&query, 1), cap);
}

Proportion ProportionOf(const WorldState& w,
                        std::span<const GroundFormula> queries,
                        std::uint64_t cap) {
  const Tally t = Enumerate(w, queries, cap);
  if (t.models == 0) throw EmptyCondition("oracle: world state has no models");
  return {Rational(t.hits, t.models)};
}

}  // namespace ddl::oracle
