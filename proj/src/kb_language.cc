#include "ddl/kb_language.h"

#include <cctype>
#include <set>
#include <sstream>

#include "ddl/errors.h"

namespace ddl {

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kColon,
  kComma,
  kSlash,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

const std::set<std::string, std::less<>> kReserved = {"true", "false", "in"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> Tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < line.size() && IsIdentChar(line[j])) ++j;
      out.push_back({Tok::kIdent, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (IsDigit(c) || (c == '.' && i + 1 < line.size() && IsDigit(line[i + 1]))) {
      std::size_t j = i;
      while (j < line.size() && IsDigit(line[j])) ++j;
      if (j < line.size() && (line[j] == '.' || line[j] == '/') &&
          j + 1 < line.size() && IsDigit(line[j + 1])) {
        ++j;
        while (j < line.size() && IsDigit(line[j])) ++j;
      }
      out.push_back({Tok::kNumber, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    const auto starts = [&](std::string_view s) {
      return line.substr(i, s.size()) == s;
    };
    if (starts("<->")) {
      out.push_back({Tok::kIff, "<->", col});
      i += 3;
      continue;
    }
    if (starts("->")) {
      out.push_back({Tok::kImplies, "->", col});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '!':
      case '~':
        kind = Tok::kNot;
        break;
      case '&':
        kind = Tok::kAnd;
        break;
      case '|':
        kind = Tok::kOr;
        break;
      case '(':
        kind = Tok::kLParen;
        break;
      case ')':
        kind = Tok::kRParen;
        break;
      case '[':
        kind = Tok::kLBracket;
        break;
      case ']':
        kind = Tok::kRBracket;
        break;
      case ':':
        kind = Tok::kColon;
        break;
      case ',':
        kind = Tok::kComma;
        break;
      case '/':
        kind = Tok::kSlash;
        break;
      default:
        throw ParseError(line_no, col,
                         std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::kEnd, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no,
             const KnowledgeBase& kb)
      : tokens_(std::move(tokens)), line_(line_no), kb_(kb) {}

  const Token& Peek() const { return tokens_[pos_]; }
  bool At(Tok kind) const { return Peek().kind == kind; }
  bool AtKeyword(std::string_view word) const {
    return At(Tok::kIdent) && Peek().text == word;
  }

  Token Next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(line_, Peek().column, what);
  }
  [[noreturn]] void FailAt(const Token& t, const std::string& what) const {
    throw ParseError(line_, t.column, what);
  }

  Token Expect(Tok kind, const char* what) {
    if (!At(kind)) {
      Fail(std::string("expected ") + what +
           (At(Tok::kEnd) ? " at end of line" : ", found '" + Peek().text + "'"));
    }
    return Next();
  }

  void ExpectEnd() {
    if (!At(Tok::kEnd)) Fail("unexpected '" + Peek().text + "'");
  }

  std::string Ident(const char* what) {
    const Token t = Expect(Tok::kIdent, what);
    if (kReserved.count(t.text)) FailAt(t, "'" + t.text + "' is reserved");
    return t.text;
  }

  Rational Number(const char* what) {
    const Token t = Expect(Tok::kNumber, what);
    auto r = ParseRational(t.text);
    if (!r) FailAt(t, "malformed number '" + t.text + "'");
    return *r;
  }

  Formula ParseFormula() { return ParseIff(); }

  // Conjunction level: stops before |, ->, <->.
  Formula ParseConjunction() {
    Formula acc = ParseUnary();
    while (At(Tok::kAnd)) {
      Next();
      acc = Formula::And(acc, ParseUnary());
    }
    return acc;
  }

  GroundLiteral ParseGroundLiteral() {
    bool positive = true;
    while (At(Tok::kNot)) {
      Next();
      positive = !positive;
    }
    const Token pred = Expect(Tok::kIdent, "predicate");
    const auto p = kb_.FindPredicate(pred.text);
    if (!p) FailAt(pred, "undeclared predicate '" + pred.text + "'");
    Expect(Tok::kLParen, "'('");
    const Token cst = Expect(Tok::kIdent, "constant");
    const auto c = kb_.FindConstant(cst.text);
    if (!c) FailAt(cst, "undeclared constant '" + cst.text + "'");
    Expect(Tok::kRParen, "')'");
    return {positive, *p, *c};
  }

  std::size_t line() const { return line_; }

 private:
  Formula ParseIff() {
    Formula acc = ParseImplies();
    while (At(Tok::kIff)) {
      Next();
      acc = Formula::Iff(acc, ParseImplies());
    }
    return acc;
  }

  Formula ParseImplies() {
    Formula lhs = ParseOr();
    if (At(Tok::kImplies)) {
      Next();
      return Formula::Implies(lhs, ParseImplies());
    }
    return lhs;
  }

  Formula ParseOr() {
    Formula acc = ParseConjunction();
    while (At(Tok::kOr)) {
      Next();
      acc = Formula::Or(acc, ParseConjunction());
    }
    return acc;
  }

  Formula ParseUnary() {
    if (At(Tok::kNot)) {
      Next();
      return Formula::Not(ParseUnary());
    }
    if (At(Tok::kLParen)) {
      Next();
      Formula inner = ParseFormula();
      Expect(Tok::kRParen, "')'");
      return inner;
    }
    const Token t = Expect(Tok::kIdent, "predicate");
    if (t.text == "true") return Formula::True();
    if (t.text == "false") return Formula::False();
    const auto p = kb_.FindPredicate(t.text);
    if (!p) FailAt(t, "undeclared predicate '" + t.text + "'");
    return Formula::Atom(*p);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const KnowledgeBase& kb_;
};

bool InUnitInterval(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace

ParsedKb ParseKb(std::string_view text) {
  ParsedKb out;
  KnowledgeBase& kb = out.kb;
  bool have_domain = false;
  std::size_t line_no = 0;
  std::size_t first_line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    ++line_no;

    LineParser p(Tokenize(line, line_no), line_no, kb);
    if (p.At(Tok::kEnd)) continue;
    const Token head = p.Expect(Tok::kIdent, "declaration keyword");
    const std::string& word = head.text;
    if (first_line == 0) first_line = line_no;

    if (word == "domain") {
      if (have_domain) p.FailAt(head, "duplicate domain declaration");
      const Token n = p.Expect(Tok::kNumber, "domain size");
      std::size_t value = 0;
      for (char c : n.text) {
        if (!IsDigit(c)) p.FailAt(n, "domain size must be an integer");
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > 1'000'000) p.FailAt(n, "domain size too large");
      }
      if (value < 1) p.FailAt(n, "domain size must be at least 1");
      kb.domain_size = value;
      have_domain = true;
      p.ExpectEnd();
    } else if (word == "pred") {
      if (p.At(Tok::kEnd)) p.Fail("expected predicate names");
      while (!p.At(Tok::kEnd)) {
        const Token t = p.Peek();
        std::string name = p.Ident("predicate name");
        if (kb.FindPredicate(name)) p.FailAt(t, "duplicate predicate '" + name + "'");
        if (kb.predicates.size() >= kMaxPredicates) {
          p.FailAt(t, "too many predicates (limit " +
                          std::to_string(kMaxPredicates) + ")");
        }
        kb.AddPredicate(std::move(name));
      }
    } else if (word == "const") {
      if (p.At(Tok::kEnd)) p.Fail("expected constant names");
      while (!p.At(Tok::kEnd)) {
        const Token t = p.Peek();
        std::string name = p.Ident("constant name");
        if (kb.FindConstant(name)) p.FailAt(t, "duplicate constant '" + name + "'");
        kb.AddConstant(std::move(name));
      }
    } else if (word == "axiom") {
      kb.axioms.push_back(p.ParseFormula());
      p.ExpectEnd();
    } else if (word == "stat") {
      StatStatement s;
      s.target = p.ParseConjunction();
      p.Expect(Tok::kOr, "'|' between target and reference class");
      s.reference = p.ParseFormula();
      if (!p.AtKeyword("in")) p.Fail("expected 'in'");
      p.Next();
      const Token open = p.Expect(Tok::kLBracket, "'['");
      s.lower = p.Number("lower bound");
      p.Expect(Tok::kComma, "','");
      s.upper = p.Number("upper bound");
      p.Expect(Tok::kRBracket, "']'");
      p.ExpectEnd();
      if (!InUnitInterval(s.lower) || !InUnitInterval(s.upper)) {
        p.FailAt(open, "interval out of [0, 1]");
      }
      if (s.lower > s.upper) {
        p.FailAt(open, "malformed interval: lower bound exceeds upper bound");
      }
      kb.stats.push_back(std::move(s));
    } else if (word == "fact") {
      out.evidence.push_back(p.ParseGroundLiteral());
      while (p.At(Tok::kComma)) {
        p.Next();
        out.evidence.push_back(p.ParseGroundLiteral());
      }
      p.ExpectEnd();
    } else if (word == "default") {
      DefaultRule r;
      r.prerequisite = p.ParseFormula();
      p.Expect(Tok::kColon, "':' after prerequisite");
      r.justifications.push_back(p.ParseFormula());
      while (p.At(Tok::kComma)) {
        p.Next();
        r.justifications.push_back(p.ParseFormula());
      }
      p.Expect(Tok::kSlash, "'/' before consequent");
      r.consequent = p.ParseFormula();
      p.ExpectEnd();
      out.rules.push_back(std::move(r));
    } else if (word == "config") {
      const Token key = p.Expect(Tok::kIdent, "config key");
      if (key.text == "delta") {
        const Token v = p.Peek();
        Rational d = p.Number("delta");
        if (d <= 0 || d >= 1) p.FailAt(v, "delta must lie in (0, 1)");
        out.config.delta = d;
      } else if (key.text == "epsilon_star") {
        const Token v = p.Peek();
        Rational e = p.Number("epsilon_star");
        if (e <= 0 || e > 1) p.FailAt(v, "epsilon_star must lie in (0, 1]");
        out.config.epsilon_star = e;
      } else if (key.text == "vacuous_reference") {
        const Token v = p.Expect(Tok::kIdent, "'satisfied' or 'violated'");
        if (v.text == "satisfied") {
          kb.vacuous_reference_holds = true;
        } else if (v.text == "violated") {
          kb.vacuous_reference_holds = false;
        } else {
          p.FailAt(v, "expected 'satisfied' or 'violated'");
        }
      } else {
        p.FailAt(key, "unknown config key '" + key.text + "'");
      }
      p.ExpectEnd();
    } else {
      p.FailAt(head, "unknown declaration '" + word + "'");
    }
  }
  if (!have_domain) {
    throw ParseError(first_line == 0 ? 1 : first_line, 0,
                     "missing domain declaration");
  }
  return out;
}

Formula ParseFormula(std::string_view text, const KnowledgeBase& kb) {
  LineParser p(Tokenize(text, 1), 1, kb);
  Formula f = p.ParseFormula();
  p.ExpectEnd();
  return f;
}

std::string SerializeKb(const ParsedKb& parsed) {
  const KnowledgeBase& kb = parsed.kb;
  std::ostringstream os;
  os << "domain " << kb.domain_size << "\n";
  if (!kb.predicates.empty()) {
    os << "pred";
    for (const auto& p : kb.predicates) os << " " << p.name;
    os << "\n";
  }
  if (!kb.constants.empty()) {
    os << "const";
    for (const auto& c : kb.constants) os << " " << c.name;
    os << "\n";
  }
  for (const auto& a : kb.axioms) os << "axiom " << kb.Render(a) << "\n";
  for (const auto& s : kb.stats) {
    std::string target = kb.Render(s.target);
    if (Precedence(s.target.kind()) < Precedence(Formula::Kind::kAnd)) {
      target = "(" + target + ")";
    }
    os << "stat " << target << " | " << kb.Render(s.reference) << " in ["
       << FormatRational(s.lower) << ", " << FormatRational(s.upper) << "]\n";
  }
  for (const auto& l : parsed.evidence) os << "fact " << kb.Render(l) << "\n";
  for (const auto& r : parsed.rules) os << "default " << kb.Render(r) << "\n";
  if (parsed.config.delta) {
    os << "config delta " << FormatRational(*parsed.config.delta) << "\n";
  }
  if (parsed.config.epsilon_star) {
    os << "config epsilon_star " << FormatRational(*parsed.config.epsilon_star)
       << "\n";
  }
  if (!kb.vacuous_reference_holds) os << "config vacuous_reference violated\n";
  return os.str();
}

}  // namespace ddl
