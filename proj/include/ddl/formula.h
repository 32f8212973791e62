// Monadic formulas: Boolean combinations of unary predicate atoms over one
// implicit variable. A formula is evaluated on a Cell, the bitmask of
// predicates that hold of a single domain element.

#ifndef DDL_FORMULA_H_
#define DDL_FORMULA_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ddl {

using Cell = std::uint32_t;

// Hard limit on the predicate vocabulary; cells are enumerated explicitly.
inline constexpr std::size_t kMaxPredicates = 20;

class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kImplies, kIff };

  // Default-constructed formula is `true`.
  Formula();

  static Formula True();
  static Formula False();
  static Formula Atom(std::size_t predicate);
  static Formula Not(Formula f);
  static Formula And(Formula lhs, Formula rhs);
  static Formula Or(Formula lhs, Formula rhs);
  static Formula Implies(Formula lhs, Formula rhs);
  static Formula Iff(Formula lhs, Formula rhs);

  // Conjunction/disjunction of a list, left-associated; empty lists give
  // true/false respectively.
  static Formula AndAll(std::span<const Formula> fs);
  static Formula OrAll(std::span<const Formula> fs);

  Kind kind() const;
  // Valid for kAtom only.
  std::size_t predicate() const;
  // Valid for kNot.
  const Formula& operand() const;
  // Valid for binary kinds.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool Eval(Cell cell) const;

  // Negation that strips a leading `!` instead of stacking another one.
  Formula Negated() const;

  // Largest predicate index mentioned plus one (0 if none).
  std::size_t PredicateBound() const;

  // Minimal-parenthesis rendering with the given predicate names.
  std::string ToString(std::span<const std::string> names) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

// Precedence used by the printer and the parser; higher binds tighter.
int Precedence(Formula::Kind kind);

}  // namespace ddl

#endif  // DDL_FORMULA_H_
