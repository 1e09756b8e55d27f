#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aggtl {

// Syntax error in a formula or trace file; positions are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, size_t line, size_t col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}

  size_t line() const { return line_; }
  size_t col() const { return col_; }

private:
  size_t line_;
  size_t col_;
};

// Start/end events of a pair do not alternate; reports the first offending
// timestamp.
class AlternationError : public std::runtime_error {
public:
  AlternationError(std::string msg, uint64_t timestamp)
      : std::runtime_error(std::move(msg)), timestamp_(timestamp) {}

  uint64_t timestamp() const { return timestamp_; }

private:
  uint64_t timestamp_;
};

// Invalid generator or evaluation configuration.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// External solver could not be run or gave no usable answer.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace aggtl
