#include "aggtl/checker.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "aggtl/oracle.hpp"

namespace aggtl {

CounterValuation::CounterValuation(std::vector<CounterDecl> decls,
                                   uint64_t length)
    : decls_(std::move(decls)), length_(length) {
  for (const auto &decl : decls_) {
    Column col;
    col.decl = decl;
    col.values.assign(length_, 0);
    columns_.emplace(decl.name, std::move(col));
  }
}

const CounterValuation::Column &
CounterValuation::find(const std::string &counter) const {
  auto it = columns_.find(counter);
  if (it == columns_.end())
    throw std::logic_error("undeclared counter '" + counter + "'");
  return it->second;
}

std::vector<int64_t> &CounterValuation::column(const std::string &counter) {
  auto it = columns_.find(counter);
  if (it == columns_.end())
    throw std::logic_error("undeclared counter '" + counter + "'");
  return it->second.values;
}

int64_t CounterValuation::at(const std::string &counter, int64_t pos) const {
  const Column &col = find(counter);
  if (pos < 0) return 0;
  if (pos < static_cast<int64_t>(length_))
    return col.values[static_cast<size_t>(pos)];
  // Past the word every instant is event-free: counters keep their value,
  // except the running pair sum, which grows while an instance stays open.
  int64_t lastv = col.values[length_ - 1];
  if (col.decl.role == CounterDecl::Role::pair_sum) {
    const Column &flag = find(pair_counter_name(
        'g', col.decl.atom, col.decl.atom2));
    if (flag.values[length_ - 1] == 1)
      return lastv + (pos - static_cast<int64_t>(length_) + 1);
  }
  return lastv;
}

CounterValuation compute_counters(const Translation &t, const DenseWord &w,
                                  bool lax) {
  CounterValuation delta(t.counters, w.length());
  int64_t n = static_cast<int64_t>(w.length());

  for (const auto &decl : t.counters) {
    if (decl.role != CounterDecl::Role::count) continue;
    auto &c = delta.column(decl.name);
    if (decl.modulo) {
      int64_t mod = static_cast<int64_t>(*decl.modulo);
      for (int64_t i = 0; i + 1 < n; ++i)
        c[i + 1] = w.holds(decl.atom, i) ? (c[i] + 1) % mod : c[i];
    } else {
      for (int64_t i = 0; i + 1 < n; ++i)
        c[i + 1] = c[i] + (w.holds(decl.atom, i) ? 1 : 0);
    }
  }

  // Pair groups share one scan; iterate over the flag counters to visit each
  // pair once.
  for (const auto &decl : t.counters) {
    if (decl.role != CounterDecl::Role::pair_flag) continue;
    const std::string &p = decl.atom;
    const std::string &q = decl.atom2;
    if (!lax) pair_instances(w, p, q); // alternation check only
    auto &g = delta.column(decl.name);
    auto &h = delta.column(pair_counter_name('h', p, q));
    auto &s = delta.column(pair_counter_name('s', p, q));
    auto &a = delta.column(pair_counter_name('a', p, q));
    auto &b = delta.column(pair_counter_name('b', p, q));

    for (int64_t i = 0; i + 1 < n; ++i) {
      bool sp = w.holds(p, i);
      bool sq = w.holds(q, i);
      if (sp && !sq) { // A6
        g[i + 1] = 1;
        s[i + 1] = s[i] + 1;
        h[i + 1] = h[i];
        a[i + 1] = a[i];
      } else if (sq && !sp) { // A7
        g[i + 1] = 0;
        h[i + 1] = h[i] + 1;
        a[i + 1] = s[i];
        s[i + 1] = s[i];
      } else if (sp && sq) { // A9, zero-duration instance
        g[i + 1] = g[i];
        h[i + 1] = h[i] + 1;
        a[i + 1] = a[i];
        s[i + 1] = s[i];
      } else { // A8
        g[i + 1] = g[i];
        h[i + 1] = h[i];
        a[i + 1] = a[i];
        s[i + 1] = s[i] + (g[i] == 1 ? 1 : 0);
      }
    }

    // b carries the value s takes at the next end event; after the last one
    // the axioms leave it free and we pin it to the final s value.
    int64_t pending = s[n - 1];
    for (int64_t i = n - 1; i >= 0; --i) {
      if (w.holds(q, i)) pending = s[i];
      b[i] = pending;
    }
  }

  return delta;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct CltlbEval {
  const DenseWord &w;
  const CounterValuation &delta;
  int64_t limit; // number of positions, B

  bool prop(const std::string &atom, int64_t i) const {
    if (atom == kValidityAtom) return w.e(i);
    return w.holds(atom, i);
  }

  int64_t term(const ArithTerm &t, int64_t i) const {
    switch (t.kind) {
    case ArithTerm::Kind::constant:
      return t.coeff;
    case ArithTerm::Kind::here:
      return t.coeff * delta.at(t.counter, i);
    case ArithTerm::Kind::next:
      return t.coeff * delta.at(t.counter, i + 1);
    case ArithTerm::Kind::prev:
      return t.coeff * delta.at(t.counter, i - static_cast<int64_t>(t.depth));
    }
    throw std::logic_error("eval_cltlb: bad arithmetic term");
  }

  int64_t sum(const std::vector<ArithTerm> &terms, int64_t i) const {
    int64_t v = 0;
    for (const auto &t : terms) v += term(t, i);
    return v;
  }

  int64_t future_end(const Interval &ivl, int64_t i) const {
    int64_t last = limit - 1;
    if (i > last) return last;
    if (ivl.unbounded() || ivl.hi >= static_cast<uint64_t>(last - i))
      return last;
    return i + static_cast<int64_t>(ivl.hi);
  }

  int64_t future_begin(const Interval &ivl, int64_t i) const {
    if (ivl.lo > static_cast<uint64_t>(limit)) return limit;
    return i + static_cast<int64_t>(ivl.lo);
  }

  bool at(const CltlbPtr &f, int64_t i) const {
    switch (f->kind) {
    case CKind::prop:
      return prop(f->atom, i);
    case CKind::neg_prop:
      return !prop(f->atom, i);
    case CKind::compare:
      return ccmp_holds(f->op, sum(f->lhs, i), sum(f->rhs, i));
    case CKind::and_:
      return at(f->a, i) && at(f->b, i);
    case CKind::or_:
      return at(f->a, i) || at(f->b, i);
    case CKind::not_:
      return !at(f->a, i);
    case CKind::implies:
      return !at(f->a, i) || at(f->b, i);
    case CKind::ite:
      return at(f->a, i) ? at(f->b, i) : at(f->c, i);
    case CKind::next:
      return at(f->a, i + 1);
    case CKind::yesterday:
      return at(f->a, i - static_cast<int64_t>(f->depth));
    case CKind::globally: {
      for (int64_t j = std::max<int64_t>(i, 0); j < limit; ++j)
        if (!at(f->a, j)) return false;
      return true;
    }
    case CKind::weak_until: {
      for (int64_t j = std::max<int64_t>(i, 0); j < limit; ++j) {
        if (at(f->b, j)) return true;
        if (!at(f->a, j)) return false;
      }
      return true;
    }
    case CKind::until: {
      for (int64_t j = future_begin(f->ivl, i); j <= future_end(f->ivl, i);
           ++j) {
        if (j < 0) continue;
        if (!at(f->b, j)) continue;
        bool ok = true;
        for (int64_t k = i; k < j && ok; ++k)
          if (!at(f->a, k)) ok = false;
        if (ok) return true;
      }
      return false;
    }
    case CKind::release: {
      for (int64_t j = future_begin(f->ivl, i); j <= future_end(f->ivl, i);
           ++j) {
        if (j < 0) continue;
        if (at(f->b, j)) continue;
        bool released = false;
        for (int64_t k = i; k < j && !released; ++k)
          if (at(f->a, k)) released = true;
        if (!released) return false;
      }
      return true;
    }
    case CKind::since: {
      int64_t lo = past_end(f->ivl, i);
      for (int64_t j = past_begin(f->ivl, i); j >= lo; --j) {
        if (!at(f->b, j)) continue;
        bool ok = true;
        for (int64_t k = j + 1; k <= i && ok; ++k)
          if (!at(f->a, k)) ok = false;
        if (ok) return true;
      }
      return false;
    }
    case CKind::trigger: {
      int64_t lo = past_end(f->ivl, i);
      for (int64_t j = past_begin(f->ivl, i); j >= lo; --j) {
        if (at(f->b, j)) continue;
        bool released = false;
        for (int64_t k = j + 1; k <= i && !released; ++k)
          if (at(f->a, k)) released = true;
        if (!released) return false;
      }
      return true;
    }
    }
    throw std::logic_error("eval_cltlb: unknown node kind");
  }

  int64_t past_begin(const Interval &ivl, int64_t i) const {
    if (i < 0) return -1;
    if (ivl.lo > static_cast<uint64_t>(i)) return -1;
    return i - static_cast<int64_t>(ivl.lo);
  }

  int64_t past_end(const Interval &ivl, int64_t i) const {
    if (i < 0) return 0;
    if (ivl.unbounded() || ivl.hi >= static_cast<uint64_t>(i)) return 0;
    return i - static_cast<int64_t>(ivl.hi);
  }
};

} // namespace

bool eval_cltlb(const CltlbPtr &f, const DenseWord &w,
                const CounterValuation &delta, int64_t i) {
  if (i < 0 || i >= static_cast<int64_t>(w.length()))
    throw ConfigError("evaluation position " + std::to_string(i) +
                      " outside the word");
  CltlbEval ev{w, delta, static_cast<int64_t>(w.length())};
  return ev.at(f, i);
}

const char *backend_text(Backend b) {
  switch (b) {
  case Backend::oracle: return "oracle";
  case Backend::counters: return "counters";
  case Backend::smt: return "smt";
  }
  return "?";
}

std::string CheckReport::to_line() const {
  std::ostringstream os;
  os << "verdict=" << (verdict ? "holds" : "violated")
     << " backend=" << backend_text(backend) << " instant=" << instant
     << " trace_entries=" << trace_entries << " dense_length=" << dense_length
     << " counters=" << counter_count << " formula_nodes=" << formula_nodes
     << " wall_ms=" << wall_ms;
  return os.str();
}

CheckReport check(const FormulaPtr &f, const TimedWord &w, uint64_t instant,
                  Backend backend, const CheckOptions &opts) {
  if (backend == Backend::smt)
    throw ConfigError("the solver-backed pipeline lives in check_smt");
  if (w.empty()) throw ConfigError("cannot check an empty trace");
  if (instant > w.last_timestamp())
    throw ConfigError("instant " + std::to_string(instant) +
                      " is past the last timestamp " +
                      std::to_string(w.last_timestamp()));

  auto begin = std::chrono::steady_clock::now();
  CheckReport report;
  report.backend = backend;
  report.instant = instant;
  report.trace_entries = w.entries.size();
  report.formula_nodes = formula_size(f);

  DenseWord dense = expand(w);
  report.dense_length = dense.length();

  if (backend == Backend::oracle) {
    report.verdict = oracle_eval(f, dense, static_cast<int64_t>(instant),
                                 opts.lax);
  } else {
    PnfFormula pnf = to_pnf(desugar(f));
    Translation t = translate(pnf, opts.translate);
    CounterValuation delta = compute_counters(t, dense, opts.lax);
    report.counter_count = t.counters.size();
    report.verdict =
        eval_cltlb(t.goal, dense, delta, static_cast<int64_t>(instant));
  }

  auto end = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(end - begin).count();
  return report;
}

} // namespace aggtl
