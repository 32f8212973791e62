#include "ddl/formula.h"

#include <algorithm>
#include <cassert>
#include <utility>

namespace ddl {

struct Formula::Node {
  Kind kind;
  std::size_t predicate = 0;
  std::vector<Formula> kids;  // one for kNot, two for binary kinds
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() : Formula(True()) {}

Formula Formula::True() {
  static const auto node =
      std::make_shared<const Node>(Node{Kind::kTrue, 0, {}});
  return Formula(node);
}

Formula Formula::False() {
  static const auto node =
      std::make_shared<const Node>(Node{Kind::kFalse, 0, {}});
  return Formula(node);
}

Formula Formula::Atom(std::size_t predicate) {
  assert(predicate < kMaxPredicates);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAtom, predicate, {}}));
}

Formula Formula::Not(Formula f) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kNot, 0, {std::move(f)}}));
}

Formula Formula::And(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAnd, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::Or(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kOr, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::Implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::Iff(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kIff, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::AndAll(std::span<const Formula> fs) {
  if (fs.empty()) return True();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

Formula Formula::OrAll(std::span<const Formula> fs) {
  if (fs.empty()) return False();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Or(acc, fs[i]);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }

std::size_t Formula::predicate() const {
  assert(kind() == Kind::kAtom);
  return node_->predicate;
}

const Formula& Formula::operand() const {
  assert(kind() == Kind::kNot);
  return node_->kids[0];
}

const Formula& Formula::lhs() const { return node_->kids[0]; }
const Formula& Formula::rhs() const { return node_->kids[1]; }

bool Formula::Eval(Cell cell) const {
  switch (node_->kind) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kAtom:
      return (cell >> node_->predicate) & 1U;
    case Kind::kNot:
      return !node_->kids[0].Eval(cell);
    case Kind::kAnd:
      return node_->kids[0].Eval(cell) && node_->kids[1].Eval(cell);
    case Kind::kOr:
      return node_->kids[0].Eval(cell) || node_->kids[1].Eval(cell);
    case Kind::kImplies:
      return !node_->kids[0].Eval(cell) || node_->kids[1].Eval(cell);
    case Kind::kIff:
      return node_->kids[0].Eval(cell) == node_->kids[1].Eval(cell);
  }
  return false;
}

Formula Formula::Negated() const {
  if (kind() == Kind::kNot) return operand();
  return Not(*this);
}

std::size_t Formula::PredicateBound() const {
  switch (node_->kind) {
    case Kind::kTrue:
    case Kind::kFalse:
      return 0;
    case Kind::kAtom:
      return node_->predicate + 1;
    case Kind::kNot:
      return node_->kids[0].PredicateBound();
    default:
      return std::max(node_->kids[0].PredicateBound(),
                      node_->kids[1].PredicateBound());
  }
}

int Precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kIff:
      return 1;
    case Formula::Kind::kImplies:
      return 2;
    case Formula::Kind::kOr:
      return 3;
    case Formula::Kind::kAnd:
      return 4;
    case Formula::Kind::kNot:
      return 5;
    default:
      return 6;
  }
}

std::string Formula::ToString(std::span<const std::string> names) const {
  const auto wrap = [&](const Formula& f, bool parens) {
    std::string s = f.ToString(names);
    return parens ? "(" + s + ")" : s;
  };
  switch (node_->kind) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kAtom:
      return node_->predicate < names.size()
                 ? names[node_->predicate]
                 : "P" + std::to_string(node_->predicate);
    case Kind::kNot:
      return "!" + wrap(operand(), Precedence(operand().kind()) <
                                       Precedence(Kind::kNot));
    default:
      break;
  }
  const int prec = Precedence(node_->kind);
  const bool right_assoc = node_->kind == Kind::kImplies;
  const int lp = Precedence(lhs().kind());
  const int rp = Precedence(rhs().kind());
  const bool lparen = lp < prec || (right_assoc && lp == prec);
  const bool rparen = rp < prec || (!right_assoc && rp == prec);
  const char* op = "";
  switch (node_->kind) {
    case Kind::kAnd:
      op = " & ";
      break;
    case Kind::kOr:
      op = " | ";
      break;
    case Kind::kImplies:
      op = " -> ";
      break;
    case Kind::kIff:
      op = " <-> ";
      break;
    default:
      break;
  }
  return wrap(lhs(), lparen) + op + wrap(rhs(), rparen);
}

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return std::strong_ordering::equal;
    case Formula::Kind::kAtom:
      return a.predicate() <=> b.predicate();
    case Formula::Kind::kNot:
      return a.operand() <=> b.operand();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

}  // namespace ddl
