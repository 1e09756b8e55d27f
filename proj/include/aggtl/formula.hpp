#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "aggtl/errors.hpp"

namespace aggtl {

// Comparison relations allowed after an aggregate modality: {<, <=, >=, >, =}.
enum class Cmp : uint8_t { lt, le, ge, gt, eq };

const char *cmp_text(Cmp op);
bool cmp_holds(Cmp op, int64_t lhs, int64_t rhs);

// Complement of the relation within {<, <=, >=, >}: swaps < with >= and
// <= with >. Calling it with eq is a logic error (eq has no complement in
// the relation set).
Cmp cmp_flip(Cmp op);

// Time interval [lo, hi] over the naturals, hi possibly unbounded.
struct Interval {
  static constexpr uint64_t kInf = ~0ull;

  uint64_t lo = 0;
  uint64_t hi = kInf;

  bool unbounded() const { return hi == kInf; }
  bool contains(uint64_t d) const { return d >= lo && (unbounded() || d <= hi); }
  bool operator==(const Interval &) const = default;
};

enum class FKind : uint8_t {
  atom,
  tru,
  fls,
  not_,
  and_,
  or_,
  implies,
  until,
  since,
  release,
  trigger,
  globally,     // G
  eventually,   // F
  once,         // P, eventually in the past
  historically, // H
  count,        // C, events in the last K instants
  avg,          // V, average per block of h within the last K instants
  max,          // M, maximum per block of h within the last K instants
  dist,         // D, average distance of event pairs in the last K instants
  neg_atom,     // normal-form leaf
  neg_aggregate // normal-form leaf wrapping one of count/avg/max/dist
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node. Operator children live in lhs/rhs (unary operators
// use lhs only); aggregate arguments are atom names, never subformulas.
struct Formula {
  FKind kind;
  std::string atom;    // atom / neg_atom / aggregate argument
  std::string atom2;   // dist: end event of the pair
  Interval ivl;        // metric temporal operators
  uint64_t window = 0; // K
  uint64_t block = 0;  // h
  uint64_t bound = 0;  // n
  Cmp op = Cmp::lt;
  FormulaPtr lhs;
  FormulaPtr rhs;
};

bool is_aggregate(FKind k);
bool is_temporal_binary(FKind k);
bool equal(const Formula &a, const Formula &b);
bool equal(const FormulaPtr &a, const FormulaPtr &b);

// Node constructors.
FormulaPtr mk_atom(std::string name);
FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_binary(FKind k, Interval ivl, FormulaPtr a, FormulaPtr b);
FormulaPtr mk_unary_temporal(FKind k, Interval ivl, FormulaPtr f);
FormulaPtr mk_count(uint64_t window, Cmp op, uint64_t bound, std::string atom);
FormulaPtr mk_avg(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                  std::string atom);
FormulaPtr mk_max(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                  std::string atom);
FormulaPtr mk_dist(uint64_t window, Cmp op, uint64_t bound, std::string start,
                   std::string end);
FormulaPtr mk_neg_atom(std::string name);
FormulaPtr mk_neg_aggregate(FormulaPtr aggregate);

// Atom reserved for the desugaring of the boolean constants; rejected in
// user input.
inline constexpr const char *kReservedTrueAtom = "__true";
// Atom name reserved for the validity proposition of the target logic;
// rejected in user input so it can never clash with a trace event.
inline constexpr const char *kValidityAtom = "__e";

// Formula in positive normal form: negation occurs only on atoms and on
// whole aggregate leaves; no implication or derived temporal operators.
class PnfFormula {
public:
  // Validates the normal-form invariants; throws std::logic_error on a
  // violation.
  explicit PnfFormula(FormulaPtr root);

  const FormulaPtr &root() const { return root_; }

private:
  FormulaPtr root_;
};

// Parses the concrete syntax; throws ParseError with line/column on bad
// input. Omitted intervals on temporal operators default to [0, inf].
FormulaPtr parse_formula(const std::string &text);

// Rewrites derived operators into the core set {atoms, !, &&, ||, U, S, R, T};
// the boolean constants become tautologies over the reserved atom.
FormulaPtr desugar(const FormulaPtr &f);

// Pushes negations to the leaves of an already desugared formula.
PnfFormula to_pnf(const FormulaPtr &f);

// Number of AST nodes; window/block/bound parameters do not contribute.
uint64_t formula_size(const FormulaPtr &f);

// Largest K among aggregate subformulas, 0 if there is none.
uint64_t max_window(const FormulaPtr &f);

// Canonical concrete syntax; parse_formula(to_text(f)) reproduces f for any
// formula without normal-form leaves.
std::string to_text(const FormulaPtr &f);

} // namespace aggtl
