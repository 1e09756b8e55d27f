#include "aggtl/trace.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace aggtl {

namespace {

// Dense expansion materializes one position per time unit; reject traces
// whose span would not fit in memory.
constexpr uint64_t kMaxDenseLength = 1u << 24;

} // namespace

DenseWord::DenseWord(const TimedWord &w) {
  if (w.empty()) throw ConfigError("cannot expand an empty trace");
  uint64_t last = w.last_timestamp();
  if (last + 2 > kMaxDenseLength)
    throw ConfigError("trace span too large for dense expansion");
  length_ = last + 2;
  at_.resize(length_);
  for (const auto &entry : w.entries) at_[entry.timestamp] = entry.events;
  alphabet_ = w.alphabet;
}

TimedWord DenseWord::collapse() const {
  TimedWord w;
  for (uint64_t i = 0; i < length_; ++i) {
    if (!at_[i].empty()) w.entries.push_back({i, at_[i]});
  }
  w.alphabet = alphabet_;
  return w;
}

DenseWord expand(const TimedWord &w) { return DenseWord(w); }

TimedWord parse_trace(const std::string &text) {
  TimedWord w;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool have_prev = false;
  uint64_t prev = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;

    size_t colon = line.find(':', pos);
    if (colon == std::string::npos)
      throw ParseError("expected '<timestamp>: <atom>[, <atom>]*'", lineno, 1);
    uint64_t ts = 0;
    bool any_digit = false;
    size_t p = pos;
    for (; p < colon; ++p) {
      char c = line[p];
      if (c == ' ' || c == '\t') break;
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("malformed timestamp", lineno, p + 1);
      ts = ts * 10 + static_cast<uint64_t>(c - '0');
      any_digit = true;
    }
    for (; p < colon; ++p)
      if (line[p] != ' ' && line[p] != '\t')
        throw ParseError("malformed timestamp", lineno, p + 1);
    if (!any_digit) throw ParseError("missing timestamp", lineno, pos + 1);
    if (have_prev && ts == prev)
      throw ParseError("duplicate timestamp " + std::to_string(ts), lineno, 1);
    if (have_prev && ts < prev)
      throw ParseError("timestamps must increase strictly", lineno, 1);

    std::set<std::string> events;
    size_t cur = colon + 1;
    while (cur <= line.size()) {
      size_t comma = line.find(',', cur);
      std::string item = line.substr(
          cur, comma == std::string::npos ? std::string::npos : comma - cur);
      size_t b = item.find_first_not_of(" \t\r");
      size_t e = item.find_last_not_of(" \t\r");
      if (b == std::string::npos)
        throw ParseError("empty atom name", lineno, cur + 1);
      std::string name = item.substr(b, e - b + 1);
      for (size_t k = 0; k < name.size(); ++k) {
        char c = name[k];
        bool ok = (k == 0)
                      ? (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
                      : (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
          throw ParseError("malformed atom name '" + name + "'", lineno,
                           cur + 1);
      }
      events.insert(name);
      if (comma == std::string::npos) break;
      cur = comma + 1;
    }
    if (events.empty())
      throw ParseError("a recorded instant needs at least one event", lineno,
                       colon + 1);

    w.entries.push_back({ts, events});
    w.alphabet.insert(events.begin(), events.end());
    prev = ts;
    have_prev = true;
  }
  if (w.entries.empty()) throw ParseError("empty trace", lineno ? lineno : 1, 1);
  return w;
}

std::string serialize(const TimedWord &w) {
  std::ostringstream os;
  for (const auto &entry : w.entries) {
    os << entry.timestamp << ": ";
    bool first = true;
    for (const auto &name : entry.events) {
      if (!first) os << ',';
      os << name;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

TimedWord generate_trace(const GeneratorConfig &cfg) {
  if (cfg.sparseness <= 0.0 || cfg.sparseness > 1.0)
    throw ConfigError("sparseness must be in (0, 1]");
  if (cfg.alphabet.empty() && cfg.pairs.empty())
    throw ConfigError("generator needs at least one atom or pair");
  for (const auto &a : cfg.alphabet) {
    if (a.probability < 0.0 || a.probability > 1.0)
      throw ConfigError("atom probability must be in [0, 1]");
    for (const auto &p : cfg.pairs)
      if (a.name == p.start || a.name == p.end)
        throw ConfigError("pair atom '" + a.name +
                          "' may not also occur in the free alphabet");
  }
  for (const auto &p : cfg.pairs) {
    if (p.start == p.end)
      throw ConfigError("a pair needs two different atoms");
    if (p.min_duration > p.max_duration)
      throw ConfigError("pair min-duration exceeds max-duration");
    if (p.min_duration > cfg.horizon)
      throw ConfigError("pair min-duration exceeds the horizon");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::set<std::string>> events(cfg.horizon + 1);

  // Pair streams first: start/end alternate, every started pair is closed
  // before the horizon.
  for (const auto &p : cfg.pairs) {
    std::uniform_int_distribution<uint64_t> dur(p.min_duration, p.max_duration);
    std::uniform_int_distribution<uint64_t> gap(1, std::max<uint64_t>(
                                                       1, cfg.horizon / 8));
    uint64_t t = std::uniform_int_distribution<uint64_t>(
        0, std::max<uint64_t>(1, cfg.horizon / 8))(rng);
    while (t <= cfg.horizon) {
      uint64_t d = dur(rng);
      if (t + d > cfg.horizon) break; // do not leave a dangling start
      events[t].insert(p.start);
      events[t + d].insert(p.end);
      uint64_t next = t + d + gap(rng);
      if (next <= t + d) break;
      t = next;
    }
  }

  // Top the trace up to the requested fraction of active instants. Instants
  // already carrying pair events count toward the target, and the horizon
  // instant is always active so the achieved ratio is exact whenever the
  // pair streams alone do not exceed it.
  if (!cfg.alphabet.empty()) {
    uint64_t total = cfg.horizon + 1;
    uint64_t want = std::max<uint64_t>(
        1, static_cast<uint64_t>(cfg.sparseness * static_cast<double>(total) +
                                 0.5));
    uint64_t occupied = 0;
    for (uint64_t t = 0; t <= cfg.horizon; ++t)
      if (!events[t].empty()) ++occupied;

    std::vector<uint64_t> active;
    if (events[cfg.horizon].empty()) {
      active.push_back(cfg.horizon);
      ++occupied;
    }
    std::vector<uint64_t> candidates;
    for (uint64_t t = 0; t < cfg.horizon; ++t)
      if (events[t].empty()) candidates.push_back(t);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (uint64_t t : candidates) {
      if (occupied >= want) break;
      active.push_back(t);
      ++occupied;
    }

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<size_t> pick(0, cfg.alphabet.size() - 1);
    std::sort(active.begin(), active.end());
    for (uint64_t t : active) {
      for (const auto &a : cfg.alphabet)
        if (coin(rng) <= a.probability) events[t].insert(a.name);
      if (events[t].empty()) events[t].insert(cfg.alphabet[pick(rng)].name);
    }
  }

  TimedWord w;
  for (uint64_t t = 0; t <= cfg.horizon; ++t) {
    if (events[t].empty()) continue;
    w.entries.push_back({t, events[t]});
    w.alphabet.insert(events[t].begin(), events[t].end());
  }
  if (w.entries.empty())
    throw ConfigError("generated trace is empty; config infeasible");
  return w;
}

double sparseness(const TimedWord &w) {
  if (w.empty()) throw ConfigError("sparseness of an empty trace");
  return static_cast<double>(w.entries.size()) /
         static_cast<double>(w.last_timestamp() + 1);
}

} // namespace aggtl
