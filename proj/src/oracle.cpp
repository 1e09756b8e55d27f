#include "aggtl/oracle.hpp"

#include <algorithm>

namespace aggtl {

std::vector<PairInstance> pair_instances(const DenseWord &w,
                                         const std::string &start,
                                         const std::string &end, bool lax) {
  std::vector<PairInstance> out;
  bool open = false;
  uint64_t opened_at = 0;
  for (int64_t t = 0; t < static_cast<int64_t>(w.length()); ++t) {
    bool s = w.holds(start, t);
    bool e = w.holds(end, t);
    if (s && e) {
      if (open) {
        if (!lax)
          throw AlternationError(
              "simultaneous '" + start + "'/'" + end + "' at timestamp " +
                  std::to_string(t) + " while an instance is open",
              static_cast<uint64_t>(t));
        continue;
      }
      out.push_back({static_cast<uint64_t>(t), static_cast<uint64_t>(t)});
    } else if (s) {
      if (open) {
        if (!lax)
          throw AlternationError("second '" + start + "' at timestamp " +
                                     std::to_string(t) +
                                     " before a matching '" + end + "'",
                                 static_cast<uint64_t>(t));
        continue;
      }
      open = true;
      opened_at = static_cast<uint64_t>(t);
    } else if (e) {
      if (!open) {
        if (!lax)
          throw AlternationError("'" + end + "' at timestamp " +
                                     std::to_string(t) + " with no open '" +
                                     start + "'",
                                 static_cast<uint64_t>(t));
        continue;
      }
      out.push_back({opened_at, static_cast<uint64_t>(t)});
      open = false;
    }
  }
  return out;
}

namespace {

int64_t count_in(const DenseWord &w, const std::string &atom, int64_t from,
                 int64_t to) {
  int64_t n = 0;
  for (int64_t t = std::max<int64_t>(from, 0); t <= to; ++t)
    if (w.holds(atom, t)) ++n;
  return n;
}

struct Eval {
  const DenseWord &w;
  bool lax;

  bool at(const FormulaPtr &f, int64_t i) const {
    switch (f->kind) {
    case FKind::atom:
      return w.holds(f->atom, i);
    case FKind::neg_atom:
      return !w.holds(f->atom, i);
    case FKind::tru:
      return true;
    case FKind::fls:
      return false;
    case FKind::not_:
      return !at(f->lhs, i);
    case FKind::and_:
      return at(f->lhs, i) && at(f->rhs, i);
    case FKind::or_:
      return at(f->lhs, i) || at(f->rhs, i);
    case FKind::implies:
      return !at(f->lhs, i) || at(f->rhs, i);
    case FKind::until:
      return until(f, i);
    case FKind::since:
      return since(f, i);
    case FKind::release:
      return release(f, i);
    case FKind::trigger:
      return trigger(f, i);
    case FKind::globally:
      return globally(f, i);
    case FKind::eventually:
      return eventually(f, i);
    case FKind::once:
      return once(f, i);
    case FKind::historically:
      return historically(f, i);
    case FKind::count:
      return cmp_holds(f->op, count_in(w, f->atom, i - static_cast<int64_t>(f->window) + 1, i),
                       static_cast<int64_t>(f->bound));
    case FKind::avg:
      return avg(f, i);
    case FKind::max:
      return max_blocks(f, i);
    case FKind::dist:
      return dist(f, i);
    case FKind::neg_aggregate:
      return !at(f->lhs, i);
    }
    throw std::logic_error("oracle_eval: unknown node kind");
  }

  int64_t horizon(const Interval &ivl, int64_t i) const {
    int64_t last = static_cast<int64_t>(w.length()) - 1;
    if (ivl.unbounded() || ivl.hi >= static_cast<uint64_t>(last - i))
      return last;
    return i + static_cast<int64_t>(ivl.hi);
  }

  // First future position inside the interval, one past the horizon when the
  // lower bound already falls beyond the word.
  int64_t win_start(const Interval &ivl, int64_t i) const {
    int64_t last = static_cast<int64_t>(w.length()) - 1;
    if (ivl.lo > static_cast<uint64_t>(last - i)) return last + 1;
    return i + static_cast<int64_t>(ivl.lo);
  }

  // Oldest past position inside the interval, clamped at the origin.
  int64_t past_lo(const Interval &ivl, int64_t i) const {
    if (ivl.unbounded() || ivl.hi >= static_cast<uint64_t>(i)) return 0;
    return i - static_cast<int64_t>(ivl.hi);
  }

  // Most recent past position inside the interval, -1 when it precedes the
  // origin.
  int64_t past_start(const Interval &ivl, int64_t i) const {
    if (ivl.lo > static_cast<uint64_t>(i)) return -1;
    return i - static_cast<int64_t>(ivl.lo);
  }

  // A witness position must be valid and satisfy the right operand; the
  // left operand is only required at valid positions strictly before it.
  bool until(const FormulaPtr &f, int64_t i) const {
    for (int64_t j = win_start(f->ivl, i); j <= horizon(f->ivl, i); ++j) {
      if (!w.e(j) || !at(f->rhs, j)) continue;
      bool ok = true;
      for (int64_t k = i; k < j && ok; ++k)
        if (w.e(k) && !at(f->lhs, k)) ok = false;
      if (ok) return true;
    }
    return false;
  }

  bool since(const FormulaPtr &f, int64_t i) const {
    int64_t lo = past_lo(f->ivl, i);
    for (int64_t j = past_start(f->ivl, i); j >= lo; --j) {
      if (!w.e(j) || !at(f->rhs, j)) continue;
      bool ok = true;
      for (int64_t k = j + 1; k <= i && ok; ++k)
        if (w.e(k) && !at(f->lhs, k)) ok = false;
      if (ok) return true;
    }
    return false;
  }

  // Dual of until: every position in the window is either invalid, or
  // satisfies the right operand, or comes after a valid position satisfying
  // the left one. Vacuous past the end of the word.
  bool release(const FormulaPtr &f, int64_t i) const {
    for (int64_t j = win_start(f->ivl, i); j <= horizon(f->ivl, i); ++j) {
      if (!w.e(j) || at(f->rhs, j)) continue;
      bool released = false;
      for (int64_t k = i; k < j && !released; ++k)
        if (w.e(k) && at(f->lhs, k)) released = true;
      if (!released) return false;
    }
    return true;
  }

  bool trigger(const FormulaPtr &f, int64_t i) const {
    int64_t lo = past_lo(f->ivl, i);
    for (int64_t j = past_start(f->ivl, i); j >= lo; --j) {
      if (!w.e(j) || at(f->rhs, j)) continue;
      bool released = false;
      for (int64_t k = j + 1; k <= i && !released; ++k)
        if (w.e(k) && at(f->lhs, k)) released = true;
      if (!released) return false;
    }
    return true;
  }

  bool globally(const FormulaPtr &f, int64_t i) const {
    for (int64_t j = win_start(f->ivl, i); j <= horizon(f->ivl, i); ++j)
      if (w.e(j) && !at(f->lhs, j)) return false;
    return true;
  }

  bool eventually(const FormulaPtr &f, int64_t i) const {
    for (int64_t j = win_start(f->ivl, i); j <= horizon(f->ivl, i); ++j)
      if (w.e(j) && at(f->lhs, j)) return true;
    return false;
  }

  bool once(const FormulaPtr &f, int64_t i) const {
    int64_t lo = past_lo(f->ivl, i);
    for (int64_t j = past_start(f->ivl, i); j >= lo; --j)
      if (w.e(j) && at(f->lhs, j)) return true;
    return false;
  }

  bool historically(const FormulaPtr &f, int64_t i) const {
    int64_t lo = past_lo(f->ivl, i);
    for (int64_t j = past_start(f->ivl, i); j >= lo; --j)
      if (w.e(j) && !at(f->lhs, j)) return false;
    return true;
  }

  // Average per block ignores the tail: count over the m = floor(K/h) full
  // blocks against n * m.
  bool avg(const FormulaPtr &f, int64_t i) const {
    int64_t m = static_cast<int64_t>(f->window / f->block);
    int64_t span = m * static_cast<int64_t>(f->block);
    int64_t c = count_in(w, f->atom, i - span + 1, i);
    return cmp_holds(f->op, c, static_cast<int64_t>(f->bound) * m);
  }

  // Maximum over the m full blocks plus the tail block of length K mod h
  // when nonempty.
  bool max_blocks(const FormulaPtr &f, int64_t i) const {
    int64_t h = static_cast<int64_t>(f->block);
    int64_t m = static_cast<int64_t>(f->window / f->block);
    int64_t best = 0;
    bool any = false;
    for (int64_t q = 0; q < m; ++q) {
      int64_t c = count_in(w, f->atom, i - (q + 1) * h + 1, i - q * h);
      best = any ? std::max(best, c) : c;
      any = true;
    }
    int64_t tail = static_cast<int64_t>(f->window % f->block);
    if (tail > 0) {
      int64_t c = count_in(w, f->atom, i - static_cast<int64_t>(f->window) + 1,
                           i - m * h);
      best = any ? std::max(best, c) : c;
      any = true;
    }
    return cmp_holds(f->op, best, static_cast<int64_t>(f->bound));
  }

  // Only pair instances entirely inside the window count; with none the
  // bound holds vacuously. The comparison multiplies through by the
  // instance count to stay in integers.
  bool dist(const FormulaPtr &f, int64_t i) const {
    auto pairs = pair_instances(w, f->atom, f->atom2, lax);
    int64_t from = i - static_cast<int64_t>(f->window) + 1;
    int64_t sum = 0;
    int64_t n = 0;
    for (const auto &p : pairs) {
      if (static_cast<int64_t>(p.open_at) >= from &&
          static_cast<int64_t>(p.close_at) <= i) {
        sum += static_cast<int64_t>(p.distance());
        ++n;
      }
    }
    if (n == 0) return true;
    return cmp_holds(f->op, sum, static_cast<int64_t>(f->bound) * n);
  }
};

} // namespace

bool oracle_eval(const FormulaPtr &f, const DenseWord &w, int64_t i, bool lax) {
  if (i < 0 || i > static_cast<int64_t>(w.last_timestamp()))
    throw ConfigError("evaluation instant " + std::to_string(i) +
                      " outside the trace (last timestamp " +
                      std::to_string(w.last_timestamp()) + ")");
  return Eval{w, lax}.at(f, i);
}

} // namespace aggtl
