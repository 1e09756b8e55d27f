#include "aggtl/formula.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace aggtl {

const char *cmp_text(Cmp op) {
  switch (op) {
  case Cmp::lt: return "<";
  case Cmp::le: return "<=";
  case Cmp::ge: return ">=";
  case Cmp::gt: return ">";
  case Cmp::eq: return "==";
  }
  return "?";
}

bool cmp_holds(Cmp op, int64_t lhs, int64_t rhs) {
  switch (op) {
  case Cmp::lt: return lhs < rhs;
  case Cmp::le: return lhs <= rhs;
  case Cmp::ge: return lhs >= rhs;
  case Cmp::gt: return lhs > rhs;
  case Cmp::eq: return lhs == rhs;
  }
  return false;
}

Cmp cmp_flip(Cmp op) {
  switch (op) {
  case Cmp::lt: return Cmp::ge;
  case Cmp::le: return Cmp::gt;
  case Cmp::ge: return Cmp::lt;
  case Cmp::gt: return Cmp::le;
  case Cmp::eq: break;
  }
  throw std::logic_error("cmp_flip: == has no complement in the relation set");
}

bool is_aggregate(FKind k) {
  return k == FKind::count || k == FKind::avg || k == FKind::max ||
         k == FKind::dist;
}

bool is_temporal_binary(FKind k) {
  return k == FKind::until || k == FKind::since || k == FKind::release ||
         k == FKind::trigger;
}

bool equal(const Formula &a, const Formula &b) {
  if (a.kind != b.kind || a.atom != b.atom || a.atom2 != b.atom2 ||
      !(a.ivl == b.ivl) || a.window != b.window || a.block != b.block ||
      a.bound != b.bound || a.op != b.op)
    return false;
  if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
  if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !equal(*a.rhs, *b.rhs)) return false;
  return true;
}

bool equal(const FormulaPtr &a, const FormulaPtr &b) {
  if (!a || !b) return a == b;
  return equal(*a, *b);
}

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

} // namespace

FormulaPtr mk_atom(std::string name) {
  return node({.kind = FKind::atom, .atom = std::move(name)});
}

FormulaPtr mk_true() { return node({.kind = FKind::tru}); }
FormulaPtr mk_false() { return node({.kind = FKind::fls}); }

FormulaPtr mk_not(FormulaPtr f) {
  return node({.kind = FKind::not_, .lhs = std::move(f)});
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return node({.kind = FKind::and_, .lhs = std::move(a), .rhs = std::move(b)});
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return node({.kind = FKind::or_, .lhs = std::move(a), .rhs = std::move(b)});
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return node({.kind = FKind::implies, .lhs = std::move(a), .rhs = std::move(b)});
}

FormulaPtr mk_binary(FKind k, Interval ivl, FormulaPtr a, FormulaPtr b) {
  if (!is_temporal_binary(k))
    throw std::logic_error("mk_binary: not a binary temporal operator");
  return node({.kind = k, .ivl = ivl, .lhs = std::move(a), .rhs = std::move(b)});
}

FormulaPtr mk_unary_temporal(FKind k, Interval ivl, FormulaPtr f) {
  if (k != FKind::globally && k != FKind::eventually && k != FKind::once &&
      k != FKind::historically)
    throw std::logic_error("mk_unary_temporal: not a unary temporal operator");
  return node({.kind = k, .ivl = ivl, .lhs = std::move(f)});
}

FormulaPtr mk_count(uint64_t window, Cmp op, uint64_t bound, std::string atom) {
  if (window == 0) throw ConfigError("count: window K must be at least 1");
  return node({.kind = FKind::count, .atom = std::move(atom), .window = window,
               .bound = bound, .op = op});
}

FormulaPtr mk_avg(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                  std::string atom) {
  if (block == 0) throw ConfigError("avg: block length h must be at least 1");
  if (window < block)
    throw ConfigError("avg: window K must be at least the block length h");
  return node({.kind = FKind::avg, .atom = std::move(atom), .window = window,
               .block = block, .bound = bound, .op = op});
}

FormulaPtr mk_max(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                  std::string atom) {
  if (window == 0) throw ConfigError("max: window K must be at least 1");
  if (block == 0) throw ConfigError("max: block length h must be at least 1");
  return node({.kind = FKind::max, .atom = std::move(atom), .window = window,
               .block = block, .bound = bound, .op = op});
}

FormulaPtr mk_dist(uint64_t window, Cmp op, uint64_t bound, std::string start,
                   std::string end) {
  if (window == 0) throw ConfigError("dist: window K must be at least 1");
  if (start == end)
    throw ConfigError("dist: the pair must name two different atoms");
  return node({.kind = FKind::dist, .atom = std::move(start),
               .atom2 = std::move(end), .window = window, .bound = bound,
               .op = op});
}

FormulaPtr mk_neg_atom(std::string name) {
  return node({.kind = FKind::neg_atom, .atom = std::move(name)});
}

FormulaPtr mk_neg_aggregate(FormulaPtr aggregate) {
  if (!aggregate || !is_aggregate(aggregate->kind))
    throw std::logic_error("mk_neg_aggregate: argument must be an aggregate");
  return node({.kind = FKind::neg_aggregate, .lhs = std::move(aggregate)});
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok : uint8_t {
  ident, number, lparen, rparen, lbracket, rbracket, comma,
  bang, and_and, or_or, arrow, lt, le, ge, gt, eq_eq, end
};

struct Token {
  Tok kind;
  std::string text;
  uint64_t value = 0;
  size_t line = 1;
  size_t col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string &text) : text_(text) { advance(); }

  const Token &peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

private:
  void advance() {
    skip_blank();
    tok_ = Token{.kind = Tok::end, .line = line_, .col = col_};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        bump();
      tok_.kind = Tok::ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Keeps every downstream product (bound times window count) well
      // inside int64.
      constexpr uint64_t kMaxNat = 1000000000ull;
      uint64_t v = 0;
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<uint64_t>(text_[pos_] - '0');
        if (v > kMaxNat)
          throw ParseError("number too large", tok_.line, tok_.col);
        bump();
      }
      tok_.kind = Tok::number;
      tok_.value = v;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
    case '(': single(Tok::lparen); return;
    case ')': single(Tok::rparen); return;
    case '[': single(Tok::lbracket); return;
    case ']': single(Tok::rbracket); return;
    case ',': single(Tok::comma); return;
    case '!': single(Tok::bang); return;
    case '&':
      pair('&', Tok::and_and, "expected '&&'");
      return;
    case '|':
      pair('|', Tok::or_or, "expected '||'");
      return;
    case '-':
      pair('>', Tok::arrow, "expected '->'");
      return;
    case '<':
      bump();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        bump();
        tok_.kind = Tok::le;
      } else {
        tok_.kind = Tok::lt;
      }
      return;
    case '>':
      bump();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        bump();
        tok_.kind = Tok::ge;
      } else {
        tok_.kind = Tok::gt;
      }
      return;
    case '=':
      pair('=', Tok::eq_eq, "expected '=='");
      return;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", line_,
                       col_);
    }
  }

  void single(Tok k) {
    bump();
    tok_.kind = k;
  }

  void pair(char second, Tok k, const char *msg) {
    bump();
    if (pos_ >= text_.size() || text_[pos_] != second)
      throw ParseError(msg, tok_.line, tok_.col);
    bump();
    tok_.kind = k;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string &text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string &text) : lx_(text) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    if (lx_.peek().kind != Tok::end) lx_.fail("unexpected trailing input");
    return f;
  }

private:
  // Lowest precedence, right-associative.
  FormulaPtr formula() {
    FormulaPtr lhs = disj();
    if (lx_.peek().kind == Tok::arrow) {
      lx_.take();
      return mk_implies(std::move(lhs), formula());
    }
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (lx_.peek().kind == Tok::or_or) {
      lx_.take();
      f = mk_or(std::move(f), conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (lx_.peek().kind == Tok::and_and) {
      lx_.take();
      f = mk_and(std::move(f), unary());
    }
    return f;
  }

  FormulaPtr unary() {
    const Token &t = lx_.peek();
    switch (t.kind) {
    case Tok::bang:
      lx_.take();
      return mk_not(unary());
    case Tok::lparen:
      return paren_or_binary_temporal();
    case Tok::ident:
      return ident_form();
    default:
      lx_.fail("expected a formula");
    }
  }

  FormulaPtr paren_or_binary_temporal() {
    expect(Tok::lparen, "expected '('");
    FormulaPtr lhs = formula();
    expect(Tok::rparen, "expected ')'");
    const Token &t = lx_.peek();
    if (t.kind == Tok::ident && t.text.size() == 1 &&
        (t.text == "U" || t.text == "S" || t.text == "R" || t.text == "T")) {
      FKind k = t.text == "U"   ? FKind::until
                : t.text == "S" ? FKind::since
                : t.text == "R" ? FKind::release
                                : FKind::trigger;
      lx_.take();
      Interval ivl = optional_interval();
      expect(Tok::lparen, "expected '(' after temporal operator");
      FormulaPtr rhs = formula();
      expect(Tok::rparen, "expected ')'");
      return mk_binary(k, ivl, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FormulaPtr ident_form() {
    Token t = lx_.take();
    const std::string &name = t.text;
    if (name == "true") return mk_true();
    if (name == "false") return mk_false();
    Tok next = lx_.peek().kind;
    if (name.size() == 1 && (next == Tok::lparen || next == Tok::lbracket)) {
      switch (name[0]) {
      case 'G': return unary_temporal(FKind::globally);
      case 'F': return unary_temporal(FKind::eventually);
      case 'P': return unary_temporal(FKind::once);
      case 'H': return unary_temporal(FKind::historically);
      default: break;
      }
      if (next == Tok::lbracket) {
        switch (name[0]) {
        case 'C': return aggregate_one(FKind::count, t);
        case 'V': return aggregate_two(FKind::avg, t);
        case 'M': return aggregate_two(FKind::max, t);
        case 'D': return aggregate_pair(t);
        default: break;
        }
      }
    }
    return mk_atom(user_atom(t));
  }

  FormulaPtr unary_temporal(FKind k) {
    Interval ivl = optional_interval();
    expect(Tok::lparen, "expected '(' after temporal operator");
    FormulaPtr f = formula();
    expect(Tok::rparen, "expected ')'");
    return mk_unary_temporal(k, ivl, std::move(f));
  }

  // C[K] cmp n ( atom )
  FormulaPtr aggregate_one(FKind k, const Token &at) {
    expect(Tok::lbracket, "expected '['");
    uint64_t window = nat("window K");
    expect(Tok::rbracket, "expected ']'");
    check_window(window, at);
    Cmp op = comparison();
    uint64_t bound = nat("bound n");
    expect(Tok::lparen, "expected '('");
    std::string atom = user_atom(expect(Tok::ident, "expected an atom"));
    expect(Tok::rparen, "expected ')' (aggregate arguments must be atoms)");
    return node({.kind = k, .atom = std::move(atom), .window = window,
                 .bound = bound, .op = op});
  }

  // V[K,h] cmp n ( atom )   /   M[K,h] cmp n ( atom )
  FormulaPtr aggregate_two(FKind k, const Token &at) {
    expect(Tok::lbracket, "expected '['");
    uint64_t window = nat("window K");
    expect(Tok::comma, "expected ','");
    uint64_t block = nat("block length h");
    expect(Tok::rbracket, "expected ']'");
    check_window(window, at);
    if (block == 0)
      throw ParseError("block length h must be at least 1", at.line, at.col);
    if (k == FKind::avg && block > window)
      throw ParseError("average needs h <= K", at.line, at.col);
    Cmp op = comparison();
    uint64_t bound = nat("bound n");
    expect(Tok::lparen, "expected '('");
    std::string atom = user_atom(expect(Tok::ident, "expected an atom"));
    expect(Tok::rparen, "expected ')' (aggregate arguments must be atoms)");
    return node({.kind = k, .atom = std::move(atom), .window = window,
                 .block = block, .bound = bound, .op = op});
  }

  // D[K] cmp n ( atom , atom )
  FormulaPtr aggregate_pair(const Token &at) {
    expect(Tok::lbracket, "expected '['");
    uint64_t window = nat("window K");
    expect(Tok::rbracket, "expected ']'");
    check_window(window, at);
    Cmp op = comparison();
    uint64_t bound = nat("bound n");
    expect(Tok::lparen, "expected '('");
    Token first = expect(Tok::ident, "expected an atom");
    std::string start = user_atom(first);
    expect(Tok::comma, "expected ','");
    std::string end = user_atom(expect(Tok::ident, "expected an atom"));
    expect(Tok::rparen, "expected ')' (aggregate arguments must be atoms)");
    if (start == end)
      throw ParseError("pair distance needs two different atoms", first.line,
                       first.col);
    return node({.kind = FKind::dist, .atom = std::move(start),
                 .atom2 = std::move(end), .window = window, .bound = bound,
                 .op = op});
  }

  void check_window(uint64_t window, const Token &at) {
    if (window == 0)
      throw ParseError("window K must be at least 1", at.line, at.col);
  }

  Interval optional_interval() {
    if (lx_.peek().kind != Tok::lbracket) return Interval{};
    Token open = lx_.take();
    uint64_t lo = nat("interval bound");
    expect(Tok::comma, "expected ','");
    uint64_t hi;
    if (lx_.peek().kind == Tok::ident && lx_.peek().text == "inf") {
      lx_.take();
      hi = Interval::kInf;
    } else {
      hi = nat("interval bound");
    }
    expect(Tok::rbracket, "expected ']'");
    if (lo > hi)
      throw ParseError("empty interval: lower bound exceeds upper bound",
                       open.line, open.col);
    return Interval{lo, hi};
  }

  Cmp comparison() {
    Token t = lx_.take();
    switch (t.kind) {
    case Tok::lt: return Cmp::lt;
    case Tok::le: return Cmp::le;
    case Tok::ge: return Cmp::ge;
    case Tok::gt: return Cmp::gt;
    case Tok::eq_eq: return Cmp::eq;
    default:
      throw ParseError("expected a comparison operator", t.line, t.col);
    }
  }

  uint64_t nat(const char *what) {
    if (lx_.peek().kind != Tok::number)
      lx_.fail(std::string("expected ") + what);
    return lx_.take().value;
  }

  std::string user_atom(const Token &t) {
    if (t.text == kReservedTrueAtom || t.text == kValidityAtom)
      throw ParseError("atom name '" + t.text + "' is reserved", t.line,
                       t.col);
    return t.text;
  }

  Token expect(Tok k, const char *msg) {
    if (lx_.peek().kind != k) lx_.fail(msg);
    return lx_.take();
  }

  Lexer lx_;
};

} // namespace

FormulaPtr parse_formula(const std::string &text) {
  return Parser(text).run();
}

// ---------------------------------------------------------------------------
// Desugaring and positive normal form
// ---------------------------------------------------------------------------

namespace {

FormulaPtr tautology() {
  return mk_or(mk_atom(kReservedTrueAtom), mk_not(mk_atom(kReservedTrueAtom)));
}

FormulaPtr contradiction() {
  return mk_and(mk_atom(kReservedTrueAtom), mk_not(mk_atom(kReservedTrueAtom)));
}

} // namespace

FormulaPtr desugar(const FormulaPtr &f) {
  switch (f->kind) {
  case FKind::atom:
  case FKind::neg_atom:
    return f;
  case FKind::tru:
    return tautology();
  case FKind::fls:
    return contradiction();
  case FKind::not_:
    return mk_not(desugar(f->lhs));
  case FKind::and_:
    return mk_and(desugar(f->lhs), desugar(f->rhs));
  case FKind::or_:
    return mk_or(desugar(f->lhs), desugar(f->rhs));
  case FKind::implies:
    return mk_or(mk_not(desugar(f->lhs)), desugar(f->rhs));
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger:
    return mk_binary(f->kind, f->ivl, desugar(f->lhs), desugar(f->rhs));
  case FKind::globally:
    return mk_not(
        mk_binary(FKind::until, f->ivl, tautology(), mk_not(desugar(f->lhs))));
  case FKind::eventually:
    return mk_binary(FKind::until, f->ivl, tautology(), desugar(f->lhs));
  case FKind::once:
    return mk_binary(FKind::since, f->ivl, tautology(), desugar(f->lhs));
  case FKind::historically:
    return mk_not(
        mk_binary(FKind::since, f->ivl, tautology(), mk_not(desugar(f->lhs))));
  case FKind::count:
  case FKind::avg:
  case FKind::max:
  case FKind::dist:
    return f;
  case FKind::neg_aggregate:
    return f;
  }
  throw std::logic_error("desugar: unknown node kind");
}

namespace {

FKind dual_of(FKind k) {
  switch (k) {
  case FKind::until: return FKind::release;
  case FKind::release: return FKind::until;
  case FKind::since: return FKind::trigger;
  case FKind::trigger: return FKind::since;
  default: throw std::logic_error("dual_of: not a binary temporal operator");
  }
}

[[noreturn]] void expect_desugared(const Formula &f) {
  throw std::logic_error("to_pnf: formula is not desugared (kind " +
                         std::to_string(static_cast<int>(f.kind)) + ")");
}

// positive=false means the node is under an odd number of negations.
FormulaPtr pnf(const FormulaPtr &f, bool positive) {
  switch (f->kind) {
  case FKind::atom:
    return positive ? f : mk_neg_atom(f->atom);
  case FKind::neg_atom:
    return positive ? f : mk_atom(f->atom);
  case FKind::not_:
    return pnf(f->lhs, !positive);
  case FKind::and_:
  case FKind::or_: {
    FKind k = f->kind;
    if (!positive) k = (k == FKind::and_) ? FKind::or_ : FKind::and_;
    auto a = pnf(f->lhs, positive);
    auto b = pnf(f->rhs, positive);
    return k == FKind::and_ ? mk_and(std::move(a), std::move(b))
                            : mk_or(std::move(a), std::move(b));
  }
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger: {
    FKind k = positive ? f->kind : dual_of(f->kind);
    return mk_binary(k, f->ivl, pnf(f->lhs, positive), pnf(f->rhs, positive));
  }
  case FKind::count:
  case FKind::avg:
  case FKind::max:
    if (positive) return f;
    // The bound relation of these aggregates negates to a relation in the
    // same set, except ==.
    if (f->op != Cmp::eq) {
      Formula flipped = *f;
      flipped.op = cmp_flip(f->op);
      return std::make_shared<const Formula>(std::move(flipped));
    }
    return mk_neg_aggregate(f);
  case FKind::dist:
    // A pair-distance bound holds vacuously when the window has no closed
    // pair, so flipping the relation is not its negation.
    return positive ? f : mk_neg_aggregate(f);
  case FKind::neg_aggregate:
    return positive ? f : f->lhs;
  case FKind::tru:
  case FKind::fls:
  case FKind::implies:
  case FKind::globally:
  case FKind::eventually:
  case FKind::once:
  case FKind::historically:
    expect_desugared(*f);
  }
  throw std::logic_error("to_pnf: unknown node kind");
}

void validate_pnf(const FormulaPtr &f) {
  switch (f->kind) {
  case FKind::atom:
  case FKind::neg_atom:
    return;
  case FKind::and_:
  case FKind::or_:
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger:
    validate_pnf(f->lhs);
    validate_pnf(f->rhs);
    return;
  case FKind::count:
  case FKind::avg:
  case FKind::max:
  case FKind::dist:
    return;
  case FKind::neg_aggregate:
    if (!f->lhs || !is_aggregate(f->lhs->kind))
      throw std::logic_error("PnfFormula: malformed negated aggregate");
    return;
  default:
    throw std::logic_error("PnfFormula: node kind not allowed in normal form");
  }
}

} // namespace

PnfFormula::PnfFormula(FormulaPtr root) : root_(std::move(root)) {
  validate_pnf(root_);
}

PnfFormula to_pnf(const FormulaPtr &f) { return PnfFormula(pnf(f, true)); }

uint64_t formula_size(const FormulaPtr &f) {
  switch (f->kind) {
  case FKind::atom:
  case FKind::neg_atom:
  case FKind::tru:
  case FKind::fls:
    return 1;
  case FKind::count:
  case FKind::avg:
  case FKind::max:
    return 2; // the aggregate node plus its atom argument
  case FKind::dist:
    return 3;
  case FKind::not_:
  case FKind::globally:
  case FKind::eventually:
  case FKind::once:
  case FKind::historically:
  case FKind::neg_aggregate:
    return 1 + formula_size(f->lhs);
  case FKind::and_:
  case FKind::or_:
  case FKind::implies:
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger:
    return 1 + formula_size(f->lhs) + formula_size(f->rhs);
  }
  throw std::logic_error("formula_size: unknown node kind");
}

uint64_t max_window(const FormulaPtr &f) {
  uint64_t best = 0;
  if (is_aggregate(f->kind)) best = f->window;
  if (f->lhs) best = std::max(best, max_window(f->lhs));
  if (f->rhs) best = std::max(best, max_window(f->rhs));
  return best;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

void print_interval(std::ostream &os, const Interval &ivl) {
  os << '[' << ivl.lo << ',';
  if (ivl.unbounded())
    os << "inf";
  else
    os << ivl.hi;
  os << ']';
}

void print(std::ostream &os, const Formula &f) {
  switch (f.kind) {
  case FKind::atom:
    os << f.atom;
    return;
  case FKind::neg_atom:
    os << '!' << f.atom;
    return;
  case FKind::tru:
    os << "true";
    return;
  case FKind::fls:
    os << "false";
    return;
  case FKind::not_:
  case FKind::neg_aggregate:
    os << "!(";
    print(os, *f.lhs);
    os << ')';
    return;
  case FKind::and_:
  case FKind::or_:
  case FKind::implies: {
    const char *sep = f.kind == FKind::and_  ? " && "
                      : f.kind == FKind::or_ ? " || "
                                             : " -> ";
    os << '(';
    print(os, *f.lhs);
    os << sep;
    print(os, *f.rhs);
    os << ')';
    return;
  }
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger: {
    const char *op = f.kind == FKind::until   ? "U"
                     : f.kind == FKind::since ? "S"
                     : f.kind == FKind::release ? "R"
                                                : "T";
    os << '(';
    print(os, *f.lhs);
    os << ") " << op;
    print_interval(os, f.ivl);
    os << " (";
    print(os, *f.rhs);
    os << ')';
    return;
  }
  case FKind::globally:
  case FKind::eventually:
  case FKind::once:
  case FKind::historically: {
    const char *op = f.kind == FKind::globally     ? "G"
                     : f.kind == FKind::eventually ? "F"
                     : f.kind == FKind::once       ? "P"
                                                   : "H";
    os << op;
    print_interval(os, f.ivl);
    os << '(';
    print(os, *f.lhs);
    os << ')';
    return;
  }
  case FKind::count:
    os << "C[" << f.window << ']' << cmp_text(f.op) << f.bound << '(' << f.atom
       << ')';
    return;
  case FKind::avg:
  case FKind::max:
    os << (f.kind == FKind::avg ? 'V' : 'M') << '[' << f.window << ','
       << f.block << ']' << cmp_text(f.op) << f.bound << '(' << f.atom << ')';
    return;
  case FKind::dist:
    os << "D[" << f.window << ']' << cmp_text(f.op) << f.bound << '(' << f.atom
       << ',' << f.atom2 << ')';
    return;
  }
}

} // namespace

std::string to_text(const FormulaPtr &f) {
  std::ostringstream os;
  print(os, *f);
  return os.str();
}

} // namespace aggtl
