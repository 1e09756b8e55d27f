#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aggtl/cltlb.hpp"
#include "aggtl/trace.hpp"

namespace aggtl {

// Per-position integer values of every declared counter over one expanded
// trace; the unique assignment the axioms admit. Reads before the origin are
// zero; reads past the word extend it with event-free instants.
class CounterValuation {
public:
  CounterValuation(std::vector<CounterDecl> decls, uint64_t length);

  int64_t at(const std::string &counter, int64_t pos) const;
  uint64_t length() const { return length_; }
  size_t counter_count() const { return decls_.size(); }
  const std::vector<CounterDecl> &decls() const { return decls_; }

  std::vector<int64_t> &column(const std::string &counter);

private:
  struct Column {
    CounterDecl decl;
    std::vector<int64_t> values;
  };

  const Column &find(const std::string &counter) const;

  std::vector<CounterDecl> decls_;
  std::map<std::string, Column> columns_;
  uint64_t length_;
};

// Computes the counter valuation in one forward pass, plus a backward pass
// for the lookahead counter b. By default the start/end events of every pair
// must alternate; lax mode applies the update rules as written to violating
// traces instead.
CounterValuation compute_counters(const Translation &t, const DenseWord &w,
                                  bool lax = false);

// Evaluates a target-logic formula at a position. Until is strong and
// release weak over the finite word; positions outside it behave as
// event-free instants.
bool eval_cltlb(const CltlbPtr &f, const DenseWord &w,
                const CounterValuation &delta, int64_t i);

enum class Backend : uint8_t { oracle, counters, smt };
const char *backend_text(Backend b);

struct CheckReport {
  bool verdict = false;
  Backend backend = Backend::counters;
  uint64_t instant = 0;
  double wall_ms = 0.0;
  uint64_t trace_entries = 0;
  uint64_t dense_length = 0;
  uint64_t counter_count = 0;
  uint64_t formula_nodes = 0;

  // Single-line key=value record.
  std::string to_line() const;
};

struct CheckOptions {
  bool lax = false;
  TranslateOptions translate;
};

// Full pipeline for the oracle or counters backend: desugar, normal form,
// translate, evaluate. The SMT backend lives in smt.hpp and shares the same
// report shape.
CheckReport check(const FormulaPtr &f, const TimedWord &w, uint64_t instant,
                  Backend backend, const CheckOptions &opts = {});

} // namespace aggtl
