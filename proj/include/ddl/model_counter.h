// Exact model counting over a finite shared domain.
//
// A model assigns every one of the N domain elements to a cell (a complete
// truth assignment to the k predicates) and every constant to a domain
// element. Constants may co-refer. A model satisfies a knowledge base when
// every element's cell satisfies each universal axiom and each statistical
// statement holds of the element counts; it satisfies a world state when it
// additionally makes every ground fact true.
//
// Counting never enumerates models. Feasible cells that no statistical
// statement and no ground fact can tell apart are merged into regions; the
// counter then enumerates region-count vectors (m_1..m_R summing to N),
// weighting each by N!/prod(m_r!) * prod(|region r|^m_r), and multiplies by the
// number of constant placements, which factorizes per constant given the
// counts.

#ifndef DDL_MODEL_COUNTER_H_
#define DDL_MODEL_COUNTER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ddl/kb.h"
#include "ddl/rational.h"

namespace ddl {

struct ModelCount {
  Integer value;

  friend bool operator==(const ModelCount&, const ModelCount&) = default;
};

struct Proportion {
  Rational value;

  friend bool operator==(const Proportion&, const Proportion&) = default;
};

// The background knowledge plus the ground facts currently taken as true
// (evidence and any accepted default conclusions).
struct WorldState {
  std::shared_ptr<const KnowledgeBase> kb;
  std::vector<GroundFormula> facts;

  static WorldState FromEvidence(std::shared_ptr<const KnowledgeBase> kb,
                                 const Evidence& evidence);

  WorldState With(GroundFormula fact) const;
  WorldState With(std::span<const GroundFormula> more) const;
};

struct CountOptions {
  // Largest number of region-count vectors a single count may visit.
  std::uint64_t budget = 100'000'000;
  // Workers splitting the enumeration; totals are identical for any value.
  unsigned threads = 1;
};

// Cells satisfying every universal axiom, in increasing bitmask order. Throws
// InconsistentAxioms when none does.
std::vector<Cell> FeasibleCells(const KnowledgeBase& kb);

class ModelCounter {
 public:
  explicit ModelCounter(std::shared_ptr<const KnowledgeBase> kb,
                        CountOptions options = {});

  const KnowledgeBase& kb() const { return *kb_; }
  const std::shared_ptr<const KnowledgeBase>& kb_ptr() const { return kb_; }
  std::span<const Cell> feasible_cells() const { return cells_; }
  const CountOptions& options() const { return options_; }

  ModelCount Count(std::span<const GroundFormula> facts) const;
  ModelCount Count(const WorldState& w) const { return Count(w.facts); }

  // Count(w + query) / Count(w). Throws EmptyCondition if Count(w) == 0.
  Proportion ProportionOf(const WorldState& w,
                          const GroundFormula& query) const;
  // Proportion of models of w that satisfy every formula in `queries`.
  Proportion ProportionOf(const WorldState& w,
                          std::span<const GroundFormula> queries) const;

  // True iff no model of w falsifies the query. Throws EmptyCondition if w
  // has no models.
  bool Entails(const WorldState& w, const GroundFormula& query) const;
  bool Consistent(const WorldState& w) const;

  // Size of the region-count-vector space the count of `facts` would visit.
  Integer RegionVectorCount(std::span<const GroundFormula> facts) const;

 private:
  struct Plan;
  Plan MakePlan(std::span<const GroundFormula> facts) const;

  std::shared_ptr<const KnowledgeBase> kb_;
  CountOptions options_;
  std::vector<Cell> cells_;
};

ModelCount CountModels(const WorldState& w, const CountOptions& options = {});
Proportion ProportionOf(const WorldState& w, const GroundFormula& query,
                        const CountOptions& options = {});
bool Entails(const WorldState& w, const GroundFormula& query,
             const CountOptions& options = {});
bool Consistent(const WorldState& w, const CountOptions& options = {});

}  // namespace ddl

#endif  // DDL_MODEL_COUNTER_H_
