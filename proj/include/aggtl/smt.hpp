#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggtl/checker.hpp"
#include "aggtl/cltlb.hpp"
#include "aggtl/trace.hpp"

namespace aggtl {

// SMT-LIB2 encoding of one bounded trace-checking instance. Variable naming:
//   e_<i>        validity proposition at position i      (Bool, i in [0,B))
//   p_<atom>_<i> event atom at position i                (Bool, i in [0,B))
//   c_<name>_<i> declared counter at position i          (Int,  i in [0,B])
//   d<k>_<i>     defined proposition k at position i (arithmetic constraints
//                and temporal subformulas; positions before the origin are
//                suffixed m<j> for -j)
// Emission is deterministic: identical inputs yield byte-identical text.
struct SmtScript {
  std::string text;
  uint64_t bound = 0; // B
};

struct SolverConfig {
  std::string path;            // solver binary
  uint64_t timeout_seconds = 60;
  std::vector<std::string> extra_args;
};

enum class SolverStatus : uint8_t { sat, unsat, unknown, solver_error };

struct SolverOutcome {
  SolverStatus status = SolverStatus::solver_error;
  std::string raw_output;
  double wall_ms = 0.0;
};

// Builds the script: the trace is asserted as an assumption, the counter
// axioms are unrolled over every position, and the goal is negated at the
// evaluation instant, so unsat means the trace satisfies the formula.
SmtScript emit(const Translation &t, const DenseWord &w, uint64_t instant);

// Writes the script to a temporary file and runs the solver on it; the
// first result token of its output decides the status. A timeout yields
// unknown.
SolverOutcome run(const SmtScript &script, const SolverConfig &solver);

// unsat => the property holds on the trace; sat => it is violated.
// Anything else has no verdict and throws SolverError.
bool interpret(const SolverOutcome &outcome);

// Startup sanity check: a trivially unsatisfiable script must come back
// unsat. Throws SolverError otherwise.
void probe_solver(const SolverConfig &solver);

// Explicit path if nonempty, else the AGGTL_SOLVER environment variable,
// else a scan of PATH for well-known solver binaries.
std::optional<std::string> resolve_solver(const std::string &explicit_path);

// Full pipeline for the solver backend.
CheckReport check_smt(const FormulaPtr &f, const TimedWord &w,
                      uint64_t instant, const SolverConfig &solver,
                      const CheckOptions &opts = {});

} // namespace aggtl
