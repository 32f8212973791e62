// Reader and writer for the knowledge-base DSL. One declaration per line,
// `#` starts a comment:
//
//   domain 8
//   pred Bird Fly Penguin
//   const a
//   axiom Penguin -> Bird
//   stat Fly | Bird in [0.85, 0.95]
//   fact Bird(a), !Penguin(a)
//   default Bird : Fly, !Penguin / Fly
//   config delta 0.05
//   config epsilon_star 1/10
//   config vacuous_reference violated
//
// Formula operators, loosest first: `<->`, `->` (right associative), `|`, `&`,
// `!` (also `~`). `true` and `false` are constants. In a `stat` line the target
// is read at conjunction level so the first top-level `|` separates it from the
// reference class; parenthesize disjunctive targets.
//
// Numbers are exact: decimals ("0.85") and fractions ("17/20") both denote
// rationals without any floating-point step.

#ifndef DDL_KB_LANGUAGE_H_
#define DDL_KB_LANGUAGE_H_

#include <string>
#include <string_view>
#include <vector>

#include "ddl/kb.h"

namespace ddl {

struct ParsedKb {
  KnowledgeBase kb;
  Evidence evidence;
  std::vector<DefaultRule> rules;
  ThresholdConfig config;

  friend bool operator==(const ParsedKb&, const ParsedKb&) = default;
};

// Throws ParseError with line/column on syntax errors, undeclared symbols,
// malformed intervals and out-of-range values.
ParsedKb ParseKb(std::string_view text);

// Canonical text; ParseKb(SerializeKb(x)) == x and serialization of a parsed
// file is idempotent.
std::string SerializeKb(const ParsedKb& parsed);

// Parses a single formula against the vocabulary of `kb`.
Formula ParseFormula(std::string_view text, const KnowledgeBase& kb);

}  // namespace ddl

#endif  // DDL_KB_LANGUAGE_H_
