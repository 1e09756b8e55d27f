#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aggtl/formula.hpp"

namespace aggtl {

// Comparison relations of the target logic; adds "not equal", which some
// guard encodings need.
enum class CCmp : uint8_t { lt, le, ge, gt, eq, ne };

CCmp to_ccmp(Cmp op);
const char *ccmp_text(CCmp op);
bool ccmp_holds(CCmp op, int64_t lhs, int64_t rhs);

// One addend of a linear combination over counter reads: coeff * read, where
// the read is the counter value here, at the next instant, or a fixed number
// of instants in the past. Exponents are stored directly, never expanded.
struct ArithTerm {
  enum class Kind : uint8_t { constant, here, next, prev };

  int64_t coeff = 1;
  Kind kind = Kind::constant;
  std::string counter; // unused for constants
  uint64_t depth = 0;  // prev only, >= 1

  static ArithTerm number(int64_t value) {
    return {value, Kind::constant, {}, 0};
  }
  static ArithTerm here(std::string counter, int64_t coeff = 1) {
    return {coeff, Kind::here, std::move(counter), 0};
  }
  static ArithTerm next(std::string counter, int64_t coeff = 1) {
    return {coeff, Kind::next, std::move(counter), 0};
  }
  // prev(c, 0) collapses to the current-instant read.
  static ArithTerm prev(std::string counter, uint64_t depth, int64_t coeff = 1);
};

enum class CKind : uint8_t {
  prop,       // atom, or the validity proposition when the atom is kValidityAtom
  neg_prop,
  compare,    // linear combination vs linear combination
  and_,
  or_,
  not_,
  implies,
  until,
  since,
  release,
  trigger,
  next,
  yesterday,  // carries a depth, evaluated depth instants in the past
  globally,   // unbounded, used by the counter axioms
  weak_until,
  ite         // definitionally (cond && a) || (!cond && b)
};

struct CltlbFormula;
using CltlbPtr = std::shared_ptr<const CltlbFormula>;

struct CltlbFormula {
  CKind kind;
  std::string atom;            // prop / neg_prop
  std::vector<ArithTerm> lhs;  // compare
  std::vector<ArithTerm> rhs;
  CCmp op = CCmp::eq;
  Interval ivl;                // metric operators
  uint64_t depth = 0;          // yesterday
  CltlbPtr a;                  // first child / ite condition
  CltlbPtr b;                  // second child / ite then-branch
  CltlbPtr c;                  // ite else-branch
};

CltlbPtr c_prop(std::string atom);
CltlbPtr c_neg_prop(std::string atom);
CltlbPtr c_compare(std::vector<ArithTerm> lhs, CCmp op,
                   std::vector<ArithTerm> rhs);
CltlbPtr c_and(CltlbPtr a, CltlbPtr b);
CltlbPtr c_or(CltlbPtr a, CltlbPtr b);
CltlbPtr c_not(CltlbPtr a);
CltlbPtr c_implies(CltlbPtr a, CltlbPtr b);
CltlbPtr c_binary(CKind k, Interval ivl, CltlbPtr a, CltlbPtr b);
CltlbPtr c_next(CltlbPtr a);
CltlbPtr c_yesterday(uint64_t depth, CltlbPtr a); // depth 0 collapses
CltlbPtr c_globally(CltlbPtr a);
CltlbPtr c_weak_until(CltlbPtr a, CltlbPtr b);
CltlbPtr c_ite(CltlbPtr cond, CltlbPtr then_branch, CltlbPtr else_branch);

// Declared counter. Count counters follow one event atom; the five pair
// counters track open/closed instances of a start/end pair.
struct CounterDecl {
  enum class Role : uint8_t {
    count,      // c: occurrences of the atom seen so far
    pair_flag,  // g: 1 while an instance is open
    pair_count, // h: closed instances seen so far
    pair_sum,   // s: summed distance of all instances so far
    pair_closed_sum, // a: summed distance of closed instances
    pair_lookahead   // b: value s will take at the next end event
  };

  std::string name;
  Role role;
  std::string atom;  // count: the event; pair roles: the start event
  std::string atom2; // pair roles: the end event
  std::optional<uint64_t> modulo; // K_max + 1 in the optimized encoding

  bool is_pair() const { return role != Role::count; }
};

// Result of translating a normal-form formula: the goal to evaluate plus the
// counter declarations and the axioms that pin their behavior down. Axioms
// are grouped by the counter (or pair) they constrain and hold from the
// initial instant.
struct Translation {
  struct AxiomGroup {
    std::string key; // count counter name, or the pair flag counter name
    std::vector<CltlbPtr> axioms;
  };

  CltlbPtr goal;
  std::vector<CounterDecl> counters; // sorted by name
  std::vector<AxiomGroup> axiom_groups; // sorted by key
  uint64_t size = 0; // see translation_size

  std::vector<CltlbPtr> all_axioms() const;
};

struct TranslateOptions {
  bool optimized = false; // modulo-counter encoding for the count modality
  uint64_t kmax = 0;      // largest window; 0 means derive from the formula
};

// The translation into the counter logic. Counters are shared between
// subformulas over the same atom or pair.
Translation translate(const PnfFormula &f, const TranslateOptions &opts = {});

// Standalone pieces of the translation, exposed for tests and reuse.
std::vector<CltlbPtr> count_axioms(const std::string &atom);
std::vector<CltlbPtr> count_axioms_mod(const std::string &atom, uint64_t kmax);
std::vector<CltlbPtr> dist_axioms(const std::string &start,
                                  const std::string &end);
CltlbPtr translate_count(uint64_t window, Cmp op, uint64_t bound,
                         const std::string &atom);
CltlbPtr translate_optimized_count(uint64_t window, Cmp op, uint64_t bound,
                                   const std::string &atom, uint64_t kmax);
CltlbPtr translate_avg(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                       const std::string &atom);
CltlbPtr translate_max(uint64_t window, uint64_t block, Cmp op, uint64_t bound,
                       const std::string &atom);
CltlbPtr translate_dist(uint64_t window, Cmp op, uint64_t bound,
                        const std::string &start, const std::string &end);

// Size of the translation: goal node count plus the number of axioms.
// Atomic constraints count one node, stored exponents count one, and an
// exponent-indexed family of identical blocks (the per-block expansion of
// the maximum modality) counts as its template, so the measure is
// independent of the window parameters K, h, n.
uint64_t translation_size(const Translation &t);

// Literal node count of an emitted formula, atomic constraints as leaves.
uint64_t node_count(const CltlbPtr &f);

// Deterministic text form used by the CLI and the golden tests.
std::string to_text(const CltlbPtr &f);
std::string to_text(const Translation &t);

// Counter naming scheme.
std::string count_counter_name(const std::string &atom);
std::string pair_counter_name(char which, const std::string &start,
                              const std::string &end);

} // namespace aggtl
