#include "aggtl/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "aggtl/oracle.hpp"

namespace aggtl {

namespace {

std::string pos_suffix(int64_t i) {
  return i < 0 ? "m" + std::to_string(-i) : std::to_string(i);
}

void collect_atoms(const CltlbPtr &f, std::set<std::string> &out) {
  if (!f) return;
  if ((f->kind == CKind::prop || f->kind == CKind::neg_prop) &&
      f->atom != kValidityAtom)
    out.insert(f->atom);
  collect_atoms(f->a, out);
  collect_atoms(f->b, out);
  collect_atoms(f->c, out);
}

class Emitter {
public:
  Emitter(const Translation &t, const DenseWord &w, uint64_t instant)
      : t_(t), w_(w), instant_(instant),
        length_(static_cast<int64_t>(w.length())) {}

  std::string run() {
    atoms_ = w_.alphabet();
    collect_atoms(t_.goal, atoms_);
    for (const auto &axiom : t_.all_axioms()) collect_atoms(axiom, atoms_);

    std::ostringstream head;
    head << "; bounded trace check, " << length_ << " positions, goal at "
         << instant_ << "\n";
    head << "(set-logic QF_LIA)\n";
    for (int64_t i = 0; i < length_; ++i)
      head << "(declare-fun e_" << i << " () Bool)\n";
    for (const auto &atom : atoms_)
      for (int64_t i = 0; i < length_; ++i)
        head << "(declare-fun p_" << atom << '_' << i << " () Bool)\n";
    for (const auto &decl : t_.counters)
      for (int64_t i = 0; i <= length_; ++i)
        head << "(declare-fun c_" << decl.name << '_' << i << " () Int)\n";

    std::ostringstream trace;
    trace << "; trace assumption\n";
    for (int64_t i = 0; i < length_; ++i) {
      trace << (w_.e(i) ? "(assert e_" : "(assert (not e_") << i
            << (w_.e(i) ? ")\n" : "))\n");
      for (const auto &atom : atoms_) {
        bool held = w_.holds(atom, i);
        trace << (held ? "(assert p_" : "(assert (not p_") << atom << '_' << i
              << (held ? ")\n" : "))\n");
      }
    }

    std::ostringstream tail;
    tail << "; counter axioms\n";
    for (const auto &axiom : t_.all_axioms())
      tail << "(assert " << bool_at(axiom, 0) << ")\n";
    tail << "; negated goal at the evaluation instant\n";
    tail << "(assert (not " << bool_at(t_.goal, static_cast<int64_t>(instant_))
         << "))\n";
    tail << "(check-sat)\n";

    return head.str() + trace.str() + defs_.str() + tail.str();
  }

private:
  // Boolean term for a subformula at a position; creates defined
  // propositions on first use.
  std::string bool_at(const CltlbPtr &f, int64_t i) {
    switch (f->kind) {
    case CKind::prop:
      if (i < 0 || i >= length_) return "false";
      return prop_name(f->atom, i);
    case CKind::neg_prop:
      if (i < 0 || i >= length_) return "true";
      return "(not " + prop_name(f->atom, i) + ")";
    // Recursive calls create definitions as a side effect, so they are
    // sequenced explicitly to keep the output order compiler-independent.
    case CKind::and_:
    case CKind::or_:
    case CKind::implies: {
      std::string a = bool_at(f->a, i);
      std::string b = bool_at(f->b, i);
      const char *op = f->kind == CKind::and_ ? "and"
                       : f->kind == CKind::or_ ? "or"
                                               : "=>";
      return "(" + std::string(op) + " " + a + " " + b + ")";
    }
    case CKind::not_:
      return "(not " + bool_at(f->a, i) + ")";
    case CKind::ite: {
      std::string cond = bool_at(f->a, i);
      std::string then_branch = bool_at(f->b, i);
      std::string else_branch = bool_at(f->c, i);
      return "(ite " + cond + " " + then_branch + " " + else_branch + ")";
    }
    case CKind::next:
      return bool_at(f->a, i + 1);
    case CKind::yesterday:
      return bool_at(f->a, i - static_cast<int64_t>(f->depth));
    case CKind::compare:
      return compare_at(f, i);
    case CKind::globally:
    case CKind::weak_until:
      return unbounded_chain(f, i);
    case CKind::until:
    case CKind::since:
    case CKind::release:
    case CKind::trigger:
      return metric_chain(f, f->ivl.lo, f->ivl.hi, i);
    }
    throw std::logic_error("smt emit: unknown node kind");
  }

  std::string prop_name(const std::string &atom, int64_t i) {
    if (atom == kValidityAtom) return "e_" + std::to_string(i);
    return "p_" + atom + "_" + std::to_string(i);
  }

  std::string compare_at(const CltlbPtr &f, int64_t i) {
    std::string sym = def_sym(chain_id(f, 0, 0), i);
    if (mark_defined(sym)) {
      std::string lhs = terms_at(f->lhs, i);
      std::string rhs = terms_at(f->rhs, i);
      std::string body = "(" + std::string(compare_op(f->op)) + " " + lhs +
                         " " + rhs + ")";
      if (f->op == CCmp::ne) body = "(not " + body + ")";
      define(sym, body);
    }
    return sym;
  }

  static std::string compare_op(CCmp op) {
    switch (op) {
    case CCmp::lt: return "<";
    case CCmp::le: return "<=";
    case CCmp::ge: return ">=";
    case CCmp::gt: return ">";
    case CCmp::eq:
    case CCmp::ne: return "=";
    }
    return "?";
  }

  static std::string literal(int64_t v) {
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
  }

  std::string counter_read(const std::string &counter, int64_t idx) {
    if (idx < 0) return "0"; // window clipped at the origin
    if (idx > length_)
      throw std::logic_error("smt emit: counter read past the bound");
    return "c_" + counter + "_" + std::to_string(idx);
  }

  std::string terms_at(const std::vector<ArithTerm> &terms, int64_t i) {
    std::vector<std::string> parts;
    for (const auto &t : terms) {
      std::string read;
      switch (t.kind) {
      case ArithTerm::Kind::constant:
        parts.push_back(literal(t.coeff));
        continue;
      case ArithTerm::Kind::here:
        read = counter_read(t.counter, i);
        break;
      case ArithTerm::Kind::next:
        read = counter_read(t.counter, i + 1);
        break;
      case ArithTerm::Kind::prev:
        read = counter_read(t.counter, i - static_cast<int64_t>(t.depth));
        break;
      }
      if (t.coeff == 1)
        parts.push_back(read);
      else if (t.coeff == -1)
        parts.push_back("(- " + read + ")");
      else
        parts.push_back("(* " + literal(t.coeff) + " " + read + ")");
    }
    if (parts.empty()) return "0";
    if (parts.size() == 1) return parts[0];
    std::string out = "(+";
    for (const auto &p : parts) out += " " + p;
    return out + ")";
  }

  // Unbounded one-step recurrences for G and W; both are satisfied past the
  // end of the word.
  std::string unbounded_chain(const CltlbPtr &f, int64_t i) {
    if (i < 0) throw std::logic_error("smt emit: chain before the origin");
    if (i >= length_) return "true";
    std::string sym = def_sym(chain_id(f, 0, 0), i);
    if (mark_defined(sym)) {
      std::string nxt = unbounded_chain(f, i + 1);
      std::string body;
      if (f->kind == CKind::globally) {
        std::string a = bool_at(f->a, i);
        body = "(and " + a + " " + nxt + ")";
      } else {
        std::string b = bool_at(f->b, i);
        std::string a = bool_at(f->a, i);
        body = "(or " + b + " (and " + a + " " + nxt + "))";
      }
      define(sym, body);
    }
    return sym;
  }

  // Metric operators unroll to one defined proposition per remaining
  // interval state per position. Future witnesses must lie inside the word
  // (strong until), while release obligations past the end are vacuous.
  std::string metric_chain(const CltlbPtr &f, uint64_t lo, uint64_t hi,
                           int64_t i) {
    bool future = f->kind == CKind::until || f->kind == CKind::release;
    bool universal = f->kind == CKind::release || f->kind == CKind::trigger;
    if (future ? i >= length_ : i < 0) return universal ? "true" : "false";
    if (lo > static_cast<uint64_t>(length_))
      return universal ? "true" : "false";
    uint64_t hi_c = (hi == Interval::kInf)
                        ? Interval::kInf
                        : std::min(hi, static_cast<uint64_t>(length_));
    std::string sym = def_sym(chain_id(f, lo, hi_c), i);
    if (!mark_defined(sym)) return sym;

    int64_t step = future ? 1 : -1;
    std::string body;
    if (lo > 0) {
      uint64_t next_hi = hi_c == Interval::kInf ? hi_c : hi_c - 1;
      std::string rest = metric_chain(f, lo - 1, next_hi, i + step);
      std::string a = bool_at(f->a, i);
      body = universal ? "(or " + a + " " + rest + ")"
                       : "(and " + a + " " + rest + ")";
    } else if (hi_c == 0) {
      body = bool_at(f->b, i);
    } else {
      uint64_t next_hi = hi_c == Interval::kInf ? hi_c : hi_c - 1;
      std::string rest = metric_chain(f, 0, next_hi, i + step);
      std::string b = bool_at(f->b, i);
      std::string a = bool_at(f->a, i);
      body = universal ? "(and " + b + " (or " + a + " " + rest + "))"
                       : "(or " + b + " (and " + a + " " + rest + "))";
    }
    define(sym, body);
    return sym;
  }

  int chain_id(const CltlbPtr &f, uint64_t lo, uint64_t hi) {
    auto key = std::make_tuple(f.get(), lo, hi);
    auto it = chains_.find(key);
    if (it != chains_.end()) return it->second;
    int id = next_chain_++;
    chains_.emplace(key, id);
    return id;
  }

  std::string def_sym(int chain, int64_t i) {
    return "d" + std::to_string(chain) + "_" + pos_suffix(i);
  }

  bool mark_defined(const std::string &sym) {
    return defined_.insert(sym).second;
  }

  void define(const std::string &sym, const std::string &body) {
    defs_ << "(declare-fun " << sym << " () Bool)\n(assert (= " << sym << ' '
          << body << "))\n";
  }

  const Translation &t_;
  const DenseWord &w_;
  uint64_t instant_;
  int64_t length_;
  std::set<std::string> atoms_;
  std::ostringstream defs_;
  std::map<std::tuple<const CltlbFormula *, uint64_t, uint64_t>, int> chains_;
  std::set<std::string> defined_;
  int next_chain_ = 0;
};

} // namespace

SmtScript emit(const Translation &t, const DenseWord &w, uint64_t instant) {
  if (instant > w.last_timestamp())
    throw ConfigError("instant past the last timestamp");
  Emitter emitter(t, w, instant);
  return {emitter.run(), w.length()};
}

// ---------------------------------------------------------------------------
// Solver process driver
// ---------------------------------------------------------------------------

namespace {

class TempFile {
public:
  explicit TempFile(const std::string &contents) {
    const char *dir = getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/aggtl-XXXXXX.smt2";
    int fd = mkstemps(path_.data(), 5);
    if (fd < 0) throw SolverError("cannot create temporary script file");
    size_t off = 0;
    while (off < contents.size()) {
      ssize_t n = ::write(fd, contents.data() + off, contents.size() - off);
      if (n <= 0) {
        ::close(fd);
        throw SolverError("cannot write temporary script file");
      }
      off += static_cast<size_t>(n);
    }
    ::close(fd);
  }

  ~TempFile() { ::unlink(path_.c_str()); }

  const std::string &path() const { return path_; }

private:
  std::string path_;
};

} // namespace

SolverOutcome run(const SmtScript &script, const SolverConfig &solver) {
  if (solver.path.empty())
    throw SolverError("no SMT solver configured; pass --solver or set "
                      "AGGTL_SOLVER, or use the counters backend");
  if (::access(solver.path.c_str(), X_OK) != 0)
    throw SolverError("solver binary '" + solver.path +
                      "' is not executable; pass --solver or set "
                      "AGGTL_SOLVER, or use the counters backend");

  TempFile file(script.text);

  int pipefd[2];
  if (::pipe(pipefd) != 0) throw SolverError("cannot create pipe");

  auto begin = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw SolverError("cannot fork solver process");
  }
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::dup2(pipefd[1], STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    std::vector<char *> argv;
    argv.push_back(const_cast<char *>(solver.path.c_str()));
    for (const auto &arg : solver.extra_args)
      argv.push_back(const_cast<char *>(arg.c_str()));
    argv.push_back(const_cast<char *>(file.path().c_str()));
    argv.push_back(nullptr);
    ::execvp(solver.path.c_str(), argv.data());
    _exit(127);
  }
  ::close(pipefd[1]);

  SolverOutcome outcome;
  bool timed_out = false;
  std::string output;
  char buf[4096];
  auto deadline = begin + std::chrono::seconds(solver.timeout_seconds);
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    int wait_ms =
        now >= deadline
            ? 0
            : static_cast<int>(
                  std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - now)
                      .count());
    struct pollfd pfd = {pipefd[0], POLLIN, 0};
    int rc = ::poll(&pfd, 1, wait_ms);
    if (rc > 0) {
      ssize_t n = ::read(pipefd[0], buf, sizeof buf);
      if (n > 0) {
        output.append(buf, static_cast<size_t>(n));
        continue;
      }
      break; // EOF
    }
    if (rc == 0) {
      timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    if (errno != EINTR) break;
  }
  ::close(pipefd[0]);
  int status = 0;
  ::waitpid(pid, &status, 0);
  auto end = std::chrono::steady_clock::now();

  outcome.raw_output = output;
  outcome.wall_ms =
      std::chrono::duration<double, std::milli>(end - begin).count();

  if (timed_out) {
    outcome.status = SolverStatus::unknown;
    return outcome;
  }

  // Only the first result token counts.
  std::istringstream tokens(output);
  std::string tok;
  while (tokens >> tok) {
    if (tok == "sat") {
      outcome.status = SolverStatus::sat;
      return outcome;
    }
    if (tok == "unsat") {
      outcome.status = SolverStatus::unsat;
      return outcome;
    }
    if (tok == "unknown") {
      outcome.status = SolverStatus::unknown;
      return outcome;
    }
  }
  outcome.status = SolverStatus::solver_error;
  return outcome;
}

bool interpret(const SolverOutcome &outcome) {
  switch (outcome.status) {
  case SolverStatus::unsat:
    return true; // negated goal unachievable: the trace satisfies the formula
  case SolverStatus::sat:
    return false;
  case SolverStatus::unknown:
    throw SolverError("solver returned no verdict (unknown or timeout)");
  case SolverStatus::solver_error:
    throw SolverError("solver failed; output began with: " +
                      outcome.raw_output.substr(0, 200));
  }
  throw SolverError("unreachable");
}

void probe_solver(const SolverConfig &solver) {
  SmtScript script{"(set-logic QF_LIA)\n(assert (and true false))\n"
                   "(check-sat)\n",
                   0};
  SolverOutcome outcome = run(script, solver);
  if (outcome.status != SolverStatus::unsat)
    throw SolverError("solver sanity probe failed: expected unsat from '" +
                      solver.path + "'");
}

std::optional<std::string> resolve_solver(const std::string &explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char *env = getenv("AGGTL_SOLVER"); env && *env)
    return std::string(env);
  const char *path = getenv("PATH");
  if (!path) return std::nullopt;
  static const char *candidates[] = {"z3", "cvc5", "cvc4", "mathsat",
                                     "yices-smt2"};
  std::string dirs(path);
  for (const char *name : candidates) {
    size_t start = 0;
    while (start <= dirs.size()) {
      size_t colon = dirs.find(':', start);
      std::string dir = dirs.substr(
          start, colon == std::string::npos ? std::string::npos : colon - start);
      if (!dir.empty()) {
        std::string full = dir + "/" + name;
        if (::access(full.c_str(), X_OK) == 0) return full;
      }
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
  }
  return std::nullopt;
}

CheckReport check_smt(const FormulaPtr &f, const TimedWord &w, uint64_t instant,
                      const SolverConfig &solver, const CheckOptions &opts) {
  if (w.empty()) throw ConfigError("cannot check an empty trace");
  if (instant > w.last_timestamp())
    throw ConfigError("instant " + std::to_string(instant) +
                      " is past the last timestamp " +
                      std::to_string(w.last_timestamp()));

  auto begin = std::chrono::steady_clock::now();
  CheckReport report;
  report.backend = Backend::smt;
  report.instant = instant;
  report.trace_entries = w.entries.size();
  report.formula_nodes = formula_size(f);

  DenseWord dense = expand(w);
  report.dense_length = dense.length();
  PnfFormula pnf = to_pnf(desugar(f));
  Translation t = translate(pnf, opts.translate);
  if (!opts.lax) {
    // Fail fast on alternation violations, matching the other backends.
    for (const auto &decl : t.counters)
      if (decl.role == CounterDecl::Role::pair_flag)
        pair_instances(dense, decl.atom, decl.atom2);
  }
  report.counter_count = t.counters.size();
  SmtScript script = emit(t, dense, instant);
  report.verdict = interpret(run(script, solver));

  auto end = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(end - begin).count();
  return report;
}

} // namespace aggtl
