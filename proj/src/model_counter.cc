#include "ddl/model_counter.h"

#include <map>
#include <thread>

#include "ddl/errors.h"

namespace ddl {

WorldState WorldState::FromEvidence(std::shared_ptr<const KnowledgeBase> kb,
                                    const Evidence& evidence) {
  WorldState w{std::move(kb), {}};
  w.facts.reserve(evidence.size());
  for (const auto& l : evidence) w.facts.push_back(l.AsFormula());
  return w;
}

WorldState WorldState::With(GroundFormula fact) const {
  WorldState w = *this;
  w.facts.push_back(std::move(fact));
  return w;
}

WorldState WorldState::With(std::span<const GroundFormula> more) const {
  WorldState w = *this;
  w.facts.insert(w.facts.end(), more.begin(), more.end());
  return w;
}

std::vector<Cell> FeasibleCells(const KnowledgeBase& kb) {
  const std::size_t k = kb.predicates.size();
  if (k > kMaxPredicates) throw Error("too many predicates");
  std::vector<Cell> cells;
  const Cell total = Cell{1} << k;
  for (Cell c = 0; c < total; ++c) {
    bool ok = true;
    for (const auto& axiom : kb.axioms) {
      if (!axiom.Eval(c)) {
        ok = false;
        break;
      }
    }
    if (ok) cells.push_back(c);
  }
  if (cells.empty()) {
    throw InconsistentAxioms("the universal axioms admit no cell");
  }
  return cells;
}

struct ModelCounter::Plan {
  struct Stat {
    std::vector<char> in_ref;
    std::vector<char> in_both;
    // Admissible range of |ref & target| for each value of |ref|.
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
  };

  bool empty = false;
  std::size_t domain = 0;
  std::size_t free_constants = 0;
  bool vacuous_holds = true;
  std::vector<std::uint64_t> region_size;
  std::vector<Stat> stats;
  std::vector<std::vector<char>> constant_sat;
};

ModelCounter::ModelCounter(std::shared_ptr<const KnowledgeBase> kb,
                           CountOptions options)
    : kb_(std::move(kb)), options_(options), cells_(FeasibleCells(*kb_)) {}

ModelCounter::Plan ModelCounter::MakePlan(
    std::span<const GroundFormula> facts) const {
  const KnowledgeBase& kb = *kb_;
  Plan plan;
  plan.domain = kb.domain_size;
  plan.vacuous_holds = kb.vacuous_reference_holds;

  std::map<std::size_t, std::vector<Formula>> by_constant;
  for (const auto& f : facts) {
    if (f.constant >= kb.constants.size()) {
      throw Error("ground fact refers to undeclared constant #" +
                  std::to_string(f.constant));
    }
    by_constant[f.constant].push_back(f.formula);
  }
  std::vector<Formula> per_constant;
  for (auto& [c, fs] : by_constant) per_constant.push_back(Formula::AndAll(fs));
  plan.free_constants = kb.constants.size() - per_constant.size();

  std::vector<Formula> splitters;
  for (const auto& s : kb.stats) {
    splitters.push_back(s.reference);
    splitters.push_back(Formula::And(s.reference, s.target));
  }
  splitters.insert(splitters.end(), per_constant.begin(), per_constant.end());

  std::map<std::vector<bool>, std::size_t> region_of;
  std::vector<std::vector<bool>> signatures;
  for (Cell c : cells_) {
    std::vector<bool> sig(splitters.size());
    for (std::size_t i = 0; i < splitters.size(); ++i) sig[i] = splitters[i].Eval(c);
    auto [it, inserted] = region_of.emplace(sig, signatures.size());
    if (inserted) {
      signatures.push_back(sig);
      plan.region_size.push_back(0);
    }
    ++plan.region_size[it->second];
  }
  const std::size_t regions = signatures.size();
  const std::size_t n = plan.domain;

  for (std::size_t i = 0; i < kb.stats.size(); ++i) {
    Plan::Stat st;
    st.in_ref.resize(regions);
    st.in_both.resize(regions);
    for (std::size_t r = 0; r < regions; ++r) {
      st.in_ref[r] = signatures[r][2 * i];
      st.in_both[r] = signatures[r][2 * i + 1];
    }
    const Rational& lower = kb.stats[i].lower;
    const Rational& upper = kb.stats[i].upper;
    const Integer ln = numerator(lower), ld = denominator(lower);
    const Integer un = numerator(upper), ud = denominator(upper);
    st.lo.resize(n + 1);
    st.hi.resize(n + 1);
    for (std::size_t ref = 0; ref <= n; ++ref) {
      const Integer lo = (ln * ref + ld - 1) / ld;
      const Integer hi = (un * ref) / ud;
      st.lo[ref] = static_cast<std::int64_t>(lo);
      st.hi[ref] = static_cast<std::int64_t>(hi);
    }
    plan.stats.push_back(std::move(st));
  }

  const std::size_t base = 2 * kb.stats.size();
  for (std::size_t j = 0; j < per_constant.size(); ++j) {
    std::vector<char> sat(regions);
    bool any = false;
    for (std::size_t r = 0; r < regions; ++r) {
      sat[r] = signatures[r][base + j];
      any = any || sat[r];
    }
    if (!any) plan.empty = true;
    plan.constant_sat.push_back(std::move(sat));
  }
  return plan;
}

namespace {

Integer Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Sums weighted leaves of the composition tree for a fixed count in the first
// region. Templated on the plan type because the plan is private to the
// counter.
class Enumerator {
 public:
  template <typename PlanT>
  explicit Enumerator(const PlanT& plan)
      : n_(plan.domain),
        regions_(plan.region_size.size()),
        counts_(regions_, 0) {
    binom_.assign(n_ + 1, std::vector<Integer>(n_ + 1));
    for (std::size_t a = 0; a <= n_; ++a) {
      binom_[a][0] = 1;
      for (std::size_t b = 1; b <= a; ++b) {
        binom_[a][b] = binom_[a - 1][b - 1];
        if (b < a) binom_[a][b] += binom_[a - 1][b];
      }
    }
    pow_.resize(regions_);
    for (std::size_t r = 0; r < regions_; ++r) {
      pow_[r].resize(n_ + 1);
      pow_[r][0] = 1;
      for (std::size_t m = 1; m <= n_; ++m) {
        pow_[r][m] = pow_[r][m - 1] * plan.region_size[r];
      }
    }
    free_factor_ = 1;
    for (std::size_t i = 0; i < plan.free_constants; ++i) free_factor_ *= n_;
  }

  template <typename PlanT>
  Integer RunFirst(const PlanT& plan, std::size_t first) {
    total_ = 0;
    const std::size_t rem = n_ - first;
    counts_[0] = first;
    const Integer w = binom_[n_][first] * pow_[0][first];
    if (regions_ == 1) {
      Leaf(plan, w);
    } else {
      Recurse(plan, 1, rem, w);
    }
    return total_;
  }

 private:
  template <typename PlanT>
  void Recurse(const PlanT& plan, std::size_t r, std::size_t rem,
               const Integer& weight) {
    if (r + 1 == regions_) {
      counts_[r] = rem;
      Leaf(plan, weight * pow_[r][rem]);
      return;
    }
    for (std::size_t m = 0; m <= rem; ++m) {
      counts_[r] = m;
      Recurse(plan, r + 1, rem - m, weight * binom_[rem][m] * pow_[r][m]);
    }
  }

  template <typename PlanT>
  void Leaf(const PlanT& plan, const Integer& weight) {
    for (const auto& st : plan.stats) {
      std::int64_t ref = 0;
      std::int64_t both = 0;
      for (std::size_t r = 0; r < regions_; ++r) {
        if (st.in_ref[r]) ref += static_cast<std::int64_t>(counts_[r]);
        if (st.in_both[r]) both += static_cast<std::int64_t>(counts_[r]);
      }
      if (ref == 0) {
        if (!plan.vacuous_holds) return;
        continue;
      }
      if (both < st.lo[ref] || both > st.hi[ref]) return;
    }
    Integer factor = free_factor_;
    for (const auto& sat : plan.constant_sat) {
      std::uint64_t places = 0;
      for (std::size_t r = 0; r < regions_; ++r) {
        if (sat[r]) places += counts_[r];
      }
      if (places == 0) return;
      factor *= places;
    }
    total_ += weight * factor;
  }

  std::size_t n_;
  std::size_t regions_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<Integer>> binom_;
  std::vector<std::vector<Integer>> pow_;
  Integer free_factor_;
  Integer total_;
};

}  // namespace

Integer ModelCounter::RegionVectorCount(
    std::span<const GroundFormula> facts) const {
  const Plan plan = MakePlan(facts);
  const std::uint64_t r = plan.region_size.size();
  return Binomial(plan.domain + r - 1, r - 1);
}

ModelCount ModelCounter::Count(std::span<const GroundFormula> facts) const {
  const Plan plan = MakePlan(facts);
  if (plan.empty) return {0};
  const std::uint64_t r = plan.region_size.size();
  const Integer space = Binomial(plan.domain + r - 1, r - 1);
  if (space > options_.budget) {
    throw BudgetExceeded("counting would visit " + space.str() +
                         " region-count vectors (budget " +
                         std::to_string(options_.budget) + ")");
  }

  const std::size_t n = plan.domain;
  const unsigned workers =
      std::max(1U, std::min<unsigned>(options_.threads,
                                      static_cast<unsigned>(n + 1)));
  if (workers == 1) {
    Enumerator e(plan);
    Integer total = 0;
    for (std::size_t first = 0; first <= n; ++first) {
      if (r == 1 && first != n) continue;
      total += e.RunFirst(plan, first);
    }
    return {total};
  }

  std::vector<Integer> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Enumerator e(plan);
        for (std::size_t first = w; first <= n; first += workers) {
          if (r == 1 && first != n) continue;
          partial[w] += e.RunFirst(plan, first);
        }
      });
    }
  }
  Integer total = 0;
  for (const auto& p : partial) total += p;
  return {total};
}

Proportion ModelCounter::ProportionOf(const WorldState& w,
                                      const GroundFormula& query) const {
  return ProportionOf(w, std::span<const GroundFormula>(&query, 1));
}

Proportion ModelCounter::ProportionOf(
    const WorldState& w, std::span<const GroundFormula> queries) const {
  const ModelCount all = Count(w.facts);
  if (all.value == 0) {
    throw EmptyCondition("proportion requested for a world state with no models");
  }
  const ModelCount hit = Count(w.With(queries).facts);
  return {Rational(hit.value, all.value)};
}

bool ModelCounter::Entails(const WorldState& w,
                           const GroundFormula& query) const {
  if (Count(w.facts).value == 0) {
    throw EmptyCondition("entailment requested for a world state with no models");
  }
  return Count(w.With(query.Negated()).facts).value == 0;
}

bool ModelCounter::Consistent(const WorldState& w) const {
  return Count(w.facts).value != 0;
}

ModelCount CountModels(const WorldState& w, const CountOptions& options) {
  return ModelCounter(w.kb, options).Count(w);
}

Proportion ProportionOf(const WorldState& w, const GroundFormula& query,
                        const CountOptions& options) {
  return ModelCounter(w.kb, options).ProportionOf(w, query);
}

bool Entails(const WorldState& w, const GroundFormula& query,
             const CountOptions& options) {
  return ModelCounter(w.kb, options).Entails(w, query);
}

bool Consistent(const WorldState& w, const CountOptions& options) {
  return ModelCounter(w.kb, options).Consistent(w);
}

}  // namespace ddl
