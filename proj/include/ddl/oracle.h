// Brute-force model enumeration for tiny instances. This is the ground truth
// the counter is checked against, so it shares no counting logic with it:
// every model is materialized and every sentence is evaluated directly.

#ifndef DDL_ORACLE_H_
#define DDL_ORACLE_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ddl/kb.h"
#include "ddl/model_counter.h"

namespace ddl::oracle {

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

struct ExplicitModel {
  std::vector<Cell> cell_of;         // one entry per domain element
  std::vector<std::size_t> denote;   // one entry per constant
};

// Streams models in lexicographic order of (cell_of[0], ..., cell_of[N-1],
// denote[0], ..., denote[c-1]); the last constant varies fastest and cells
// follow the order of `cells`.
class ModelStream {
 public:
  // Every one of the (2^k)^N * N^c models.
  ModelStream(std::size_t domain, std::size_t predicates,
              std::size_t constants, std::uint64_t cap = kDefaultCap);
  // Only models whose elements all sit in one of `cells`.
  ModelStream(std::size_t domain, std::vector<Cell> cells,
              std::size_t constants, std::uint64_t cap = kDefaultCap);

  // Number of models the stream yields.
  std::uint64_t size() const { return size_; }

  bool Next(ExplicitModel& out);
  // True when the last Next() changed some cell_of entry (always true for the
  // first model).
  bool cells_changed() const { return cells_changed_; }

 private:
  std::size_t domain_;
  std::vector<Cell> cells_;
  std::size_t constants_;
  std::uint64_t size_ = 0;
  std::vector<std::size_t> cell_digit_;
  std::vector<std::size_t> denote_;
  bool started_ = false;
  bool done_ = false;
  bool cells_changed_ = false;
};

struct UniversalAxiom {
  Formula formula;
};

using Sentence = std::variant<UniversalAxiom, StatStatement, GroundFormula>;

bool Satisfies(const ExplicitModel& m, const Sentence& sentence,
               bool vacuous_reference_holds = true);

struct Tally {
  Integer models;  // models of the world state
  Integer hits;    // of those, models satisfying every query
};

// Enumerates the models of the knowledge base's vocabulary (elements
// restricted to cells passing the axioms) and tallies the world state and the
// queries. Throws BudgetExceeded if the enumeration exceeds `cap`.
Tally Enumerate(const WorldState& w, std::span<const GroundFormula> queries,
                std::uint64_t cap = kDefaultCap);

Integer Count(const WorldState& w, std::uint64_t cap = kDefaultCap);

// Throws EmptyCondition when the world state has no models.
Proportion ProportionOf(const WorldState& w, const GroundFormula& query,
                        std::uint64_t cap = kDefaultCap);
Proportion ProportionOf(const WorldState& w,
                        std::span<const GroundFormula> queries,
                        std::uint64_t cap = kDefaultCap);

}  // namespace ddl::oracle

#endif  // DDL_ORACLE_H_
