#include "aggtl/cltlb.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aggtl {

CCmp to_ccmp(Cmp op) {
  switch (op) {
  case Cmp::lt: return CCmp::lt;
  case Cmp::le: return CCmp::le;
  case Cmp::ge: return CCmp::ge;
  case Cmp::gt: return CCmp::gt;
  case Cmp::eq: return CCmp::eq;
  }
  throw std::logic_error("to_ccmp: bad relation");
}

const char *ccmp_text(CCmp op) {
  switch (op) {
  case CCmp::lt: return "<";
  case CCmp::le: return "<=";
  case CCmp::ge: return ">=";
  case CCmp::gt: return ">";
  case CCmp::eq: return "=";
  case CCmp::ne: return "!=";
  }
  return "?";
}

bool ccmp_holds(CCmp op, int64_t lhs, int64_t rhs) {
  switch (op) {
  case CCmp::lt: return lhs < rhs;
  case CCmp::le: return lhs <= rhs;
  case CCmp::ge: return lhs >= rhs;
  case CCmp::gt: return lhs > rhs;
  case CCmp::eq: return lhs == rhs;
  case CCmp::ne: return lhs != rhs;
  }
  return false;
}

ArithTerm ArithTerm::prev(std::string counter, uint64_t depth, int64_t coeff) {
  if (depth == 0) return here(std::move(counter), coeff);
  return {coeff, Kind::prev, std::move(counter), depth};
}

namespace {

CltlbPtr cnode(CltlbFormula f) {
  return std::make_shared<const CltlbFormula>(std::move(f));
}

std::vector<ArithTerm> tidy(std::vector<ArithTerm> terms) {
  std::vector<ArithTerm> out;
  int64_t constant = 0;
  for (auto &t : terms) {
    if (t.coeff == 0) continue;
    if (t.kind == ArithTerm::Kind::constant)
      constant += t.coeff;
    else
      out.push_back(std::move(t));
  }
  if (constant != 0 || out.empty()) out.push_back(ArithTerm::number(constant));
  return out;
}

} // namespace

CltlbPtr c_prop(std::string atom) {
  return cnode({.kind = CKind::prop, .atom = std::move(atom)});
}

CltlbPtr c_neg_prop(std::string atom) {
  return cnode({.kind = CKind::neg_prop, .atom = std::move(atom)});
}

CltlbPtr c_compare(std::vector<ArithTerm> lhs, CCmp op,
                   std::vector<ArithTerm> rhs) {
  return cnode({.kind = CKind::compare, .lhs = tidy(std::move(lhs)),
                .rhs = tidy(std::move(rhs)), .op = op});
}

CltlbPtr c_and(CltlbPtr a, CltlbPtr b) {
  return cnode({.kind = CKind::and_, .a = std::move(a), .b = std::move(b)});
}

CltlbPtr c_or(CltlbPtr a, CltlbPtr b) {
  return cnode({.kind = CKind::or_, .a = std::move(a), .b = std::move(b)});
}

CltlbPtr c_not(CltlbPtr a) {
  return cnode({.kind = CKind::not_, .a = std::move(a)});
}

CltlbPtr c_implies(CltlbPtr a, CltlbPtr b) {
  return cnode({.kind = CKind::implies, .a = std::move(a), .b = std::move(b)});
}

CltlbPtr c_binary(CKind k, Interval ivl, CltlbPtr a, CltlbPtr b) {
  if (k != CKind::until && k != CKind::since && k != CKind::release &&
      k != CKind::trigger)
    throw std::logic_error("c_binary: not a metric binary operator");
  return cnode({.kind = k, .ivl = ivl, .a = std::move(a), .b = std::move(b)});
}

CltlbPtr c_next(CltlbPtr a) {
  return cnode({.kind = CKind::next, .a = std::move(a)});
}

CltlbPtr c_yesterday(uint64_t depth, CltlbPtr a) {
  if (depth == 0) return a;
  return cnode({.kind = CKind::yesterday, .depth = depth, .a = std::move(a)});
}

CltlbPtr c_globally(CltlbPtr a) {
  return cnode({.kind = CKind::globally, .a = std::move(a)});
}

CltlbPtr c_weak_until(CltlbPtr a, CltlbPtr b) {
  return cnode(
      {.kind = CKind::weak_until, .a = std::move(a), .b = std::move(b)});
}

CltlbPtr c_ite(CltlbPtr cond, CltlbPtr then_branch, CltlbPtr else_branch) {
  return cnode({.kind = CKind::ite, .a = std::move(cond),
                .b = std::move(then_branch), .c = std::move(else_branch)});
}

std::string count_counter_name(const std::string &atom) { return "c_" + atom; }

std::string pair_counter_name(char which, const std::string &start,
                              const std::string &end) {
  return std::string(1, which) + "_" + start + "_" + end;
}

// ---------------------------------------------------------------------------
// Counter axioms
// ---------------------------------------------------------------------------

namespace {

CltlbPtr conj(std::vector<CltlbPtr> parts) {
  CltlbPtr out = parts.front();
  for (size_t i = 1; i < parts.size(); ++i)
    out = c_and(std::move(out), parts[i]);
  return out;
}

CltlbPtr eq_const(const std::string &counter, int64_t value) {
  return c_compare({ArithTerm::here(counter)}, CCmp::eq,
                   {ArithTerm::number(value)});
}

// X(x) = x + delta
CltlbPtr step_by(const std::string &counter, int64_t delta) {
  return c_compare({ArithTerm::next(counter)}, CCmp::eq,
                   {ArithTerm::here(counter), ArithTerm::number(delta)});
}

// X(x) = y
CltlbPtr next_is(const std::string &counter, const std::string &source) {
  return c_compare({ArithTerm::next(counter)}, CCmp::eq,
                   {ArithTerm::here(source)});
}

// X(x) = v
CltlbPtr next_const(const std::string &counter, int64_t value) {
  return c_compare({ArithTerm::next(counter)}, CCmp::eq,
                   {ArithTerm::number(value)});
}

// X(x) = (x + 1) mod (kmax + 1), spelled as a case split on the wrap point.
CltlbPtr step_mod(const std::string &counter, uint64_t kmax) {
  return c_ite(eq_const(counter, static_cast<int64_t>(kmax)),
               next_const(counter, 0), step_by(counter, 1));
}

CltlbPtr valid_event(const std::string &atom) {
  return c_and(c_prop(kValidityAtom), c_prop(atom));
}

} // namespace

std::vector<CltlbPtr> count_axioms(const std::string &atom) {
  std::string c = count_counter_name(atom);
  return {
      eq_const(c, 0),
      c_globally(c_implies(valid_event(atom), step_by(c, 1))),
      c_globally(c_implies(
          c_or(c_neg_prop(kValidityAtom), c_neg_prop(atom)), step_by(c, 0))),
  };
}

std::vector<CltlbPtr> count_axioms_mod(const std::string &atom,
                                       uint64_t kmax) {
  std::string c = count_counter_name(atom);
  return {
      eq_const(c, 0),
      c_globally(c_implies(valid_event(atom), step_mod(c, kmax))),
      c_globally(c_implies(
          c_or(c_neg_prop(kValidityAtom), c_neg_prop(atom)), step_by(c, 0))),
  };
}

std::vector<CltlbPtr> dist_axioms(const std::string &start,
                                  const std::string &end) {
  if (start == end)
    throw ConfigError("pair axioms need two different atoms");
  std::string g = pair_counter_name('g', start, end);
  std::string h = pair_counter_name('h', start, end);
  std::string s = pair_counter_name('s', start, end);
  std::string a = pair_counter_name('a', start, end);
  std::string b = pair_counter_name('b', start, end);

  CltlbPtr b_stable_until_end =
      c_weak_until(next_is(b, b), valid_event(end));

  // Initialization; b is pinned by the end-event axiom instead.
  CltlbPtr a4 = conj({eq_const(g, 0), eq_const(h, 0), eq_const(a, 0),
                      eq_const(s, 0)});
  CltlbPtr a5 = b_stable_until_end;
  // Start event: open the instance, start accruing distance.
  CltlbPtr a6 = c_globally(c_implies(
      c_and(valid_event(start), c_neg_prop(end)),
      conj({next_const(g, 1), step_by(s, 1), step_by(h, 0), step_by(a, 0)})));
  // End event: close the instance; s flows into a (future) and b (past).
  CltlbPtr a7 = c_globally(c_implies(
      c_and(valid_event(end), c_neg_prop(start)),
      conj({next_const(g, 0), step_by(h, 1), next_is(a, s), step_by(s, 0),
            c_compare({ArithTerm::here(b)}, CCmp::eq, {ArithTerm::here(s)}),
            c_next(b_stable_until_end)})));
  // No event of the pair: everything stays, s keeps accruing while open.
  CltlbPtr a8 = c_globally(c_implies(
      c_or(c_neg_prop(kValidityAtom),
           c_and(c_neg_prop(start), c_neg_prop(end))),
      conj({step_by(g, 0), step_by(h, 0), step_by(a, 0),
            c_implies(eq_const(g, 1), step_by(s, 1)),
            c_implies(eq_const(g, 0), step_by(s, 0))})));
  // Simultaneous start and end: a zero-duration instance; only h moves.
  CltlbPtr a9 = c_globally(c_implies(
      c_and(valid_event(start), c_prop(end)),
      conj({step_by(g, 0), step_by(h, 1), step_by(a, 0), step_by(s, 0),
            c_next(b_stable_until_end)})));

  return {a4, a5, a6, a7, a8, a9};
}

// ---------------------------------------------------------------------------
// Modality translations
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kMaxScaledBound = 1000000000000000ull; // 10^15
constexpr uint64_t kMaxBlocks = 100000;

// X(c) - Y^(K-1)(c) as a term list, with an optional extra constant.
std::vector<ArithTerm> window_delta(const std::string &counter,
                                    uint64_t window, int64_t extra = 0) {
  return {ArithTerm::next(counter),
          ArithTerm::prev(counter, window - 1, -1), ArithTerm::number(extra)};
}

} // namespace

CltlbPtr translate_count(uint64_t window, Cmp op, uint64_t bound,
                         const std::string &atom) {
  if (window == 0) throw ConfigError("count window must be at least 1");
  if (bound > kMaxScaledBound) throw ConfigError("count bound too large");
  std::string c = count_counter_name(atom);
  return c_compare(window_delta(c, window), to_ccmp(op),
                   {ArithTerm::number(static_cast<int64_t>(bound))});
}

CltlbPtr translate_optimized_count(uint64_t window, Cmp op, uint64_t bound,
                                   const std::string &atom, uint64_t kmax) {
  if (window == 0) throw ConfigError("count window must be at least 1");
  if (window > kmax)
    throw ConfigError("window " + std::to_string(window) +
                      " exceeds the modulo bound K_max=" + std::to_string(kmax));
  if (bound > kMaxScaledBound) throw ConfigError("count bound too large");
  std::string c = count_counter_name(atom);
  auto bound_terms = [&] {
    return std::vector<ArithTerm>{ArithTerm::number(static_cast<int64_t>(bound))};
  };
  // W1(kmax, window, c): the counter difference, wrapped around the modulus
  // when negative.
  return c_ite(
      c_compare(window_delta(c, window), CCmp::ge, {ArithTerm::number(0)}),
      c_compare(window_delta(c, window), to_ccmp(op), bound_terms()),
      c_compare(window_delta(c, window, static_cast<int64_t>(kmax) + 1),
                to_ccmp(op), bound_terms()));
}

CltlbPtr translate_avg(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                       const std::string &atom) {
  if (block == 0 || window < block)
    throw ConfigError("average needs K >= h >= 1");
  uint64_t m = window / block;
  if (bound != 0 && m > kMaxScaledBound / bound)
    throw ConfigError("scaled average bound too large");
  return translate_count(m * block, op, bound * m, atom);
}

namespace {

CltlbPtr max_combination(uint64_t window, uint64_t block, Cmp op,
                         uint64_t bound, const std::string &atom, bool conjoin,
                         const TranslateOptions *opt) {
  uint64_t m = window / block;
  if (m > kMaxBlocks)
    throw ConfigError("maximum modality spans too many blocks");
  auto piece = [&](uint64_t w) {
    return opt && opt->optimized
               ? translate_optimized_count(w, op, bound, atom, opt->kmax)
               : translate_count(w, op, bound, atom);
  };
  CltlbPtr out;
  for (uint64_t q = 0; q < m; ++q) {
    CltlbPtr part = c_yesterday(q * block, piece(block));
    out = out ? (conjoin ? c_and(out, part) : c_or(out, part)) : part;
  }
  if (window % block != 0) {
    CltlbPtr tail = c_yesterday(m * block, piece(window % block));
    out = out ? (conjoin ? c_and(out, tail) : c_or(out, tail)) : tail;
  }
  return out;
}

CltlbPtr translate_max_impl(uint64_t window, uint64_t block, Cmp op,
                            uint64_t bound, const std::string &atom,
                            const TranslateOptions *opt) {
  if (window == 0 || block == 0) throw ConfigError("maximum needs K, h >= 1");
  switch (op) {
  case Cmp::lt:
  case Cmp::le:
    return max_combination(window, block, op, bound, atom, true, opt);
  case Cmp::gt:
  case Cmp::ge:
    return max_combination(window, block, op, bound, atom, false, opt);
  case Cmp::eq:
    return c_and(
        max_combination(window, block, Cmp::ge, bound, atom, false, opt),
        max_combination(window, block, Cmp::le, bound, atom, true, opt));
  }
  throw std::logic_error("translate_max: bad relation");
}

} // namespace

CltlbPtr translate_max(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                       const std::string &atom) {
  return translate_max_impl(window, block, op, bound, atom, nullptr);
}

CltlbPtr translate_dist(uint64_t window, Cmp op, uint64_t bound,
                        const std::string &start, const std::string &end) {
  if (window == 0) throw ConfigError("distance window must be at least 1");
  // The bound multiplies a counter difference, so keep the product in int64.
  if (bound > 1000000000ull) throw ConfigError("distance bound too large");
  std::string g = pair_counter_name('g', start, end);
  std::string h = pair_counter_name('h', start, end);
  std::string a = pair_counter_name('a', start, end);
  std::string b = pair_counter_name('b', start, end);
  int64_t n = static_cast<int64_t>(bound);
  uint64_t k1 = window - 1;

  // With an instance open at the window start, the first end event inside
  // the window only closes that instance: the fully enclosed pairs number
  // Delta(h) - 1 and their summed distance is X(a) - Y^(K-1)(b). Without
  // one, Delta(h) and X(a) - Y^(K-1)(a). Either way the modality holds
  // vacuously when no pair lies entirely inside the window, which also
  // covers an instance spanning the whole window (Delta(h) = 0).
  CltlbPtr cond = c_compare({ArithTerm::prev(g, k1)}, CCmp::eq,
                            {ArithTerm::number(1)});
  CltlbPtr then_branch =
      c_or(c_compare(window_delta(h, window), CCmp::le, {ArithTerm::number(1)}),
           c_compare({ArithTerm::next(a), ArithTerm::prev(b, k1, -1)},
                     to_ccmp(op),
                     {ArithTerm::next(h, n), ArithTerm::prev(h, k1, -n),
                      ArithTerm::number(-n)}));
  CltlbPtr else_branch =
      c_or(c_compare(window_delta(h, window), CCmp::eq, {ArithTerm::number(0)}),
           c_compare({ArithTerm::next(a), ArithTerm::prev(a, k1, -1)},
                     to_ccmp(op),
                     {ArithTerm::next(h, n), ArithTerm::prev(h, k1, -n)}));
  return c_ite(std::move(cond), std::move(then_branch), std::move(else_branch));
}

// ---------------------------------------------------------------------------
// Whole-formula translation
// ---------------------------------------------------------------------------

namespace {

class Builder {
public:
  explicit Builder(const TranslateOptions &opts) : opts_(opts) {}

  CltlbPtr walk(const FormulaPtr &f) {
    switch (f->kind) {
    case FKind::atom:
      return c_prop(f->atom);
    case FKind::neg_atom:
      return c_neg_prop(f->atom);
    case FKind::and_:
      return c_and(walk(f->lhs), walk(f->rhs));
    case FKind::or_:
      return c_or(walk(f->lhs), walk(f->rhs));
    case FKind::until:
    case FKind::since:
      return c_binary(f->kind == FKind::until ? CKind::until : CKind::since,
                      f->ivl,
                      c_or(c_neg_prop(kValidityAtom), walk(f->lhs)),
                      c_and(c_prop(kValidityAtom), walk(f->rhs)));
    case FKind::release:
    case FKind::trigger:
      return c_binary(
          f->kind == FKind::release ? CKind::release : CKind::trigger, f->ivl,
          c_and(c_prop(kValidityAtom), walk(f->lhs)),
          c_or(c_neg_prop(kValidityAtom), walk(f->rhs)));
    case FKind::count:
      need_count(f->atom);
      return opts_.optimized
                 ? translate_optimized_count(f->window, f->op, f->bound,
                                             f->atom, opts_.kmax)
                 : translate_count(f->window, f->op, f->bound, f->atom);
    case FKind::avg: {
      need_count(f->atom);
      uint64_t m = f->window / f->block;
      if (f->bound != 0 && m > kMaxScaledBound / f->bound)
        throw ConfigError("scaled average bound too large");
      return opts_.optimized
                 ? translate_optimized_count(m * f->block, f->op, f->bound * m,
                                             f->atom, opts_.kmax)
                 : translate_count(m * f->block, f->op, f->bound * m, f->atom);
    }
    case FKind::max:
      need_count(f->atom);
      return translate_max_impl(f->window, f->block, f->op, f->bound, f->atom,
                                &opts_);
    case FKind::dist:
      need_pair(f->atom, f->atom2);
      return translate_dist(f->window, f->op, f->bound, f->atom, f->atom2);
    case FKind::neg_aggregate:
      return c_not(walk(f->lhs));
    default:
      throw std::logic_error("translate: formula is not in normal form");
    }
  }

  void need_count(const std::string &atom) {
    std::string name = count_counter_name(atom);
    if (counters_.count(name)) return;
    counters_.emplace(name,
                      CounterDecl{name, CounterDecl::Role::count, atom, "",
                                  opts_.optimized
                                      ? std::optional<uint64_t>(opts_.kmax + 1)
                                      : std::nullopt});
    groups_[name] = opts_.optimized ? count_axioms_mod(atom, opts_.kmax)
                                    : count_axioms(atom);
  }

  void need_pair(const std::string &start, const std::string &end) {
    std::string key = pair_counter_name('g', start, end);
    if (counters_.count(key)) return;
    auto add = [&](char which, CounterDecl::Role role) {
      std::string name = pair_counter_name(which, start, end);
      counters_.emplace(name, CounterDecl{name, role, start, end, std::nullopt});
    };
    add('g', CounterDecl::Role::pair_flag);
    add('h', CounterDecl::Role::pair_count);
    add('s', CounterDecl::Role::pair_sum);
    add('a', CounterDecl::Role::pair_closed_sum);
    add('b', CounterDecl::Role::pair_lookahead);
    groups_[key] = dist_axioms(start, end);
  }

  Translation finish(CltlbPtr goal) {
    Translation t;
    t.goal = std::move(goal);
    for (auto &entry : counters_) t.counters.push_back(entry.second);
    for (auto &entry : groups_)
      t.axiom_groups.push_back({entry.first, entry.second});
    return t;
  }

private:
  TranslateOptions opts_;
  std::map<std::string, CounterDecl> counters_;
  std::map<std::string, std::vector<CltlbPtr>> groups_;
};

} // namespace

namespace {

// Goal size for the window-independent measure: one unit per emitted node,
// with the maximum modality's block family counted as one block plus one
// tail template.
uint64_t sized_nodes(const FormulaPtr &f) {
  switch (f->kind) {
  case FKind::atom:
  case FKind::neg_atom:
    return 1;
  case FKind::and_:
  case FKind::or_:
    return 1 + sized_nodes(f->lhs) + sized_nodes(f->rhs);
  case FKind::until:
  case FKind::since:
  case FKind::release:
  case FKind::trigger:
    // Operator plus the two validity guards around the operands.
    return 5 + sized_nodes(f->lhs) + sized_nodes(f->rhs);
  case FKind::count:
  case FKind::avg:
    return 1;
  case FKind::max:
    return 5; // block template, tail template, combinator
  case FKind::dist:
    return 8; // case split, edge condition, two guarded comparisons
  case FKind::neg_aggregate:
    return 1 + sized_nodes(f->lhs);
  default:
    throw std::logic_error("sized_nodes: formula is not in normal form");
  }
}

} // namespace

Translation translate(const PnfFormula &f, const TranslateOptions &opts) {
  TranslateOptions effective = opts;
  if (effective.optimized && effective.kmax == 0)
    effective.kmax = max_window(f.root());
  if (effective.optimized && effective.kmax == 0)
    throw ConfigError("optimized translation needs a window to bound, "
                      "but the formula has no aggregate");
  Builder builder(effective);
  CltlbPtr goal = builder.walk(f.root());
  Translation t = builder.finish(std::move(goal));
  t.size = sized_nodes(f.root());
  for (const auto &group : t.axiom_groups) t.size += group.axioms.size();
  return t;
}

std::vector<CltlbPtr> Translation::all_axioms() const {
  std::vector<CltlbPtr> out;
  for (const auto &group : axiom_groups)
    out.insert(out.end(), group.axioms.begin(), group.axioms.end());
  return out;
}

uint64_t node_count(const CltlbPtr &f) {
  switch (f->kind) {
  case CKind::prop:
  case CKind::neg_prop:
  case CKind::compare:
    return 1;
  case CKind::not_:
  case CKind::next:
  case CKind::yesterday:
  case CKind::globally:
    return 1 + node_count(f->a);
  case CKind::and_:
  case CKind::or_:
  case CKind::implies:
  case CKind::until:
  case CKind::since:
  case CKind::release:
  case CKind::trigger:
  case CKind::weak_until:
    return 1 + node_count(f->a) + node_count(f->b);
  case CKind::ite:
    return 1 + node_count(f->a) + node_count(f->b) + node_count(f->c);
  }
  throw std::logic_error("node_count: unknown node kind");
}

uint64_t translation_size(const Translation &t) { return t.size; }

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

void print_atom_name(std::ostream &os, const std::string &atom) {
  os << (atom == kValidityAtom ? "e" : atom.c_str());
}

void print_term(std::ostream &os, const ArithTerm &t, bool first) {
  int64_t coeff = t.coeff;
  if (first) {
    if (coeff < 0) os << '-';
  } else {
    os << (coeff < 0 ? " - " : " + ");
  }
  uint64_t mag = static_cast<uint64_t>(coeff < 0 ? -coeff : coeff);
  if (t.kind == ArithTerm::Kind::constant) {
    os << mag;
    return;
  }
  if (mag != 1) os << mag << " * ";
  switch (t.kind) {
  case ArithTerm::Kind::here:
    os << t.counter;
    break;
  case ArithTerm::Kind::next:
    os << "X(" << t.counter << ')';
    break;
  case ArithTerm::Kind::prev:
    os << "Y^" << t.depth << '(' << t.counter << ')';
    break;
  case ArithTerm::Kind::constant:
    break;
  }
}

void print_terms(std::ostream &os, const std::vector<ArithTerm> &terms) {
  // Trailing zero constants only clutter the output.
  size_t n = terms.size();
  if (n > 1 && terms.back().kind == ArithTerm::Kind::constant &&
      terms.back().coeff == 0)
    --n;
  for (size_t i = 0; i < n; ++i) print_term(os, terms[i], i == 0);
}

void print(std::ostream &os, const CltlbFormula &f) {
  switch (f.kind) {
  case CKind::prop:
    print_atom_name(os, f.atom);
    return;
  case CKind::neg_prop:
    os << '!';
    print_atom_name(os, f.atom);
    return;
  case CKind::compare:
    print_terms(os, f.lhs);
    os << ' ' << ccmp_text(f.op) << ' ';
    print_terms(os, f.rhs);
    return;
  case CKind::and_:
  case CKind::or_:
  case CKind::implies: {
    const char *sep = f.kind == CKind::and_  ? " && "
                      : f.kind == CKind::or_ ? " || "
                                             : " -> ";
    os << '(';
    print(os, *f.a);
    os << sep;
    print(os, *f.b);
    os << ')';
    return;
  }
  case CKind::not_:
    os << "!(";
    print(os, *f.a);
    os << ')';
    return;
  case CKind::until:
  case CKind::since:
  case CKind::release:
  case CKind::trigger: {
    const char *op = f.kind == CKind::until   ? "U"
                     : f.kind == CKind::since ? "S"
                     : f.kind == CKind::release ? "R"
                                                : "T";
    os << '(';
    print(os, *f.a);
    os << ") " << op << '[' << f.ivl.lo << ',';
    if (f.ivl.unbounded())
      os << "inf";
    else
      os << f.ivl.hi;
    os << "] (";
    print(os, *f.b);
    os << ')';
    return;
  }
  case CKind::next:
    os << "X(";
    print(os, *f.a);
    os << ')';
    return;
  case CKind::yesterday:
    os << "Y^" << f.depth << '(';
    print(os, *f.a);
    os << ')';
    return;
  case CKind::globally:
    os << "G(";
    print(os, *f.a);
    os << ')';
    return;
  case CKind::weak_until:
    os << '(';
    print(os, *f.a);
    os << ") W (";
    print(os, *f.b);
    os << ')';
    return;
  case CKind::ite:
    os << "if (";
    print(os, *f.a);
    os << ") then (";
    print(os, *f.b);
    os << ") else (";
    print(os, *f.c);
    os << ')';
    return;
  }
}

const char *role_text(CounterDecl::Role role) {
  switch (role) {
  case CounterDecl::Role::count: return "count";
  case CounterDecl::Role::pair_flag: return "pair-flag";
  case CounterDecl::Role::pair_count: return "pair-count";
  case CounterDecl::Role::pair_sum: return "pair-sum";
  case CounterDecl::Role::pair_closed_sum: return "pair-closed-sum";
  case CounterDecl::Role::pair_lookahead: return "pair-lookahead";
  }
  return "?";
}

} // namespace

std::string to_text(const CltlbPtr &f) {
  std::ostringstream os;
  print(os, *f);
  return os.str();
}

std::string to_text(const Translation &t) {
  std::ostringstream os;
  os << "counters:\n";
  for (const auto &decl : t.counters) {
    os << "  " << decl.name << ": " << role_text(decl.role) << '('
       << decl.atom;
    if (!decl.atom2.empty()) os << ',' << decl.atom2;
    os << ')';
    if (decl.modulo) os << " mod " << *decl.modulo;
    os << '\n';
  }
  os << "axioms:\n";
  for (const auto &group : t.axiom_groups)
    for (const auto &axiom : group.axioms)
      os << "  " << to_text(axiom) << '\n';
  os << "goal:\n  " << to_text(t.goal) << '\n';
  return os.str();
}

} // namespace aggtl
