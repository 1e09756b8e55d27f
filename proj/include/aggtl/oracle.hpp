#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aggtl/formula.hpp"
#include "aggtl/trace.hpp"

namespace aggtl {

// One start/end occurrence pair; open_at <= close_at, distance is the
// difference. A start answered at the same instant is a zero-duration
// instance.
struct PairInstance {
  uint64_t open_at;
  uint64_t close_at;

  uint64_t distance() const { return close_at - open_at; }
  bool operator==(const PairInstance &) const = default;
};

// Matches start/end occurrences in timestamp order. Occurrences must
// alternate start, end, start, end; a position carrying both is a
// zero-duration instance and is only legal while no instance is open.
// A trailing unanswered start yields no instance. Throws AlternationError
// on a violation unless lax is set, in which case extra starts and
// unmatched ends are ignored.
std::vector<PairInstance> pair_instances(const DenseWord &w,
                                         const std::string &start,
                                         const std::string &end,
                                         bool lax = false);

// Direct recursive evaluation of a formula over the expanded trace at
// position i with 0 <= i <= last timestamp. Future obligations use
// finite-trace semantics: until needs a witness inside the word, release is
// satisfied past the end. Accepts both plain and normal-form nodes.
bool oracle_eval(const FormulaPtr &f, const DenseWord &w, int64_t i,
                 bool lax = false);

inline bool oracle_eval(const PnfFormula &f, const DenseWord &w, int64_t i,
                        bool lax = false) {
  return oracle_eval(f.root(), w, i, lax);
}

} // namespace aggtl
