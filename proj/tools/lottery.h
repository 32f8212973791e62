// Knowledge bases for the species lottery: n mutually exclusive species that
// exhaust a genus, one statistical statement per species, and the evidence
// that `a` belongs to the genus.

#ifndef DDL_TOOLS_LOTTERY_H_
#define DDL_TOOLS_LOTTERY_H_

#include <optional>

#include "ddl/kb_language.h"

namespace ddl::cli {

struct LotterySpec {
  std::size_t n = 3;
  std::size_t domain = 8;
  // Every species gets the same interval. Without one, [0, min(1, 2/n)] is
  // used, which keeps the theory consistent for every n.
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  std::optional<Rational> epsilon_star;
};

Rational LotteryLower(const LotterySpec& spec);
Rational LotteryUpper(const LotterySpec& spec);

// Predicates B, S1..Sn; constant a; fact B(a); one declared rule
// B : !Si / !Si per species; config delta = the species upper bound when it
// lies strictly between 0 and 1.
ParsedKb MakeLottery(const LotterySpec& spec);

}  // namespace ddl::cli

#endif  // DDL_TOOLS_LOTTERY_H_
