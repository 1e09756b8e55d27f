#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "aggtl/errors.hpp"

namespace aggtl {

// Finite timed trace: strictly increasing integer timestamps, each carrying a
// nonempty set of events.
struct TimedWord {
  struct Entry {
    uint64_t timestamp;
    std::set<std::string> events;
  };

  std::vector<Entry> entries;
  std::set<std::string> alphabet;

  bool empty() const { return entries.empty(); }
  uint64_t last_timestamp() const { return entries.back().timestamp; }
};

// Position-indexed expansion of a TimedWord. Position i corresponds to
// timestamp i; the validity proposition e holds exactly at positions that
// carry events. The word has one trailing position without events so that
// next-instant counter reads at the last timestamp stay in range.
class DenseWord {
public:
  explicit DenseWord(const TimedWord &w);

  uint64_t length() const { return length_; } // B
  uint64_t last_timestamp() const { return length_ - 2; }

  bool e(int64_t pos) const {
    return pos >= 0 && pos < static_cast<int64_t>(length_) &&
           !at_[static_cast<size_t>(pos)].empty();
  }

  const std::set<std::string> &at(int64_t pos) const {
    if (pos < 0 || pos >= static_cast<int64_t>(length_)) return empty_;
    return at_[static_cast<size_t>(pos)];
  }

  bool holds(const std::string &atom, int64_t pos) const {
    return pos >= 0 && pos < static_cast<int64_t>(length_) &&
           at_[static_cast<size_t>(pos)].count(atom) > 0;
  }

  const std::set<std::string> &alphabet() const { return alphabet_; }

  // Collapses back to the timed word (positions where e holds).
  TimedWord collapse() const;

private:
  uint64_t length_;
  std::vector<std::set<std::string>> at_;
  std::set<std::string> alphabet_;
  std::set<std::string> empty_;
};

// Synthetic trace generation; deterministic for a fixed seed.
struct GeneratorConfig {
  struct AtomSpec {
    std::string name;
    double probability = 1.0; // per active instant
  };
  struct PairSpec {
    std::string start;
    std::string end;
    uint64_t min_duration = 0;
    uint64_t max_duration = 0;
  };

  uint64_t seed = 0;
  uint64_t horizon = 100;   // largest timestamp
  double sparseness = 1.0;  // fraction of instants carrying events, in (0,1]
  std::vector<AtomSpec> alphabet;
  std::vector<PairSpec> pairs; // start/end strictly alternate
};

// Parses the one-line-per-instant trace format; throws ParseError.
TimedWord parse_trace(const std::string &text);

// Byte-stable serialization: ascending timestamps, atoms sorted within a
// line.
std::string serialize(const TimedWord &w);

DenseWord expand(const TimedWord &w);

TimedWord generate_trace(const GeneratorConfig &cfg);

// Entry count over the spanned time, entries / (last timestamp + 1).
double sparseness(const TimedWord &w);

} // namespace aggtl
