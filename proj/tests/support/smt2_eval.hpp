#pragma once

// Model-based validation of emitted SMT-LIB2 scripts, used by the emitter
// tests. The reference model (trace booleans plus the computed counter
// valuation) is total, so every assertion must evaluate to a definite truth
// value: definitional equalities bind their defined symbol, every other
// assertion except the final negated-goal one must come out true, and the
// final one must equal the negation of the expected verdict. This checks the
// script against the semantics without an external solver; it is not a
// satisfiability procedure.

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "aggtl/checker.hpp"
#include "aggtl/trace.hpp"

namespace aggtl::testsmt {

struct Sexpr {
  std::string atom; // empty for lists
  std::vector<Sexpr> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

inline std::vector<Sexpr> parse_script(const std::string &text) {
  std::vector<Sexpr> out;
  std::vector<Sexpr> stack;
  size_t i = 0;
  auto push = [&](Sexpr s) {
    if (stack.empty())
      out.push_back(std::move(s));
    else
      stack.back().items.push_back(std::move(s));
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      stack.push_back({});
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw std::runtime_error("unbalanced ')'");
      Sexpr done = std::move(stack.back());
      stack.pop_back();
      push(std::move(done));
      ++i;
    } else {
      size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')')
        ++i;
      push({text.substr(start, i - start), {}});
    }
  }
  if (!stack.empty()) throw std::runtime_error("unbalanced '('");
  return out;
}

using Value = std::variant<bool, int64_t>;

class ModelChecker {
public:
  ModelChecker(const DenseWord &w, const CounterValuation &delta)
      : w_(w), delta_(delta) {}

  // Returns the value the final assertion evaluated to; throws on any
  // inconsistent earlier assertion, undeclared symbol, or sort error.
  bool run(const std::string &script) {
    auto forms = parse_script(script);
    bool last_value = false;
    bool saw_assert = false;
    for (const auto &form : forms) {
      if (form.items.empty() || !form.items[0].is_atom()) continue;
      const std::string &head = form.items[0].atom;
      if (head == "declare-fun") {
        declared_.insert(form.items[1].atom);
      } else if (head == "assert") {
        const Sexpr &body = form.items[1];
        if (defines(body)) {
          bound_[body.items[1].atom] = eval(body.items[2]);
          continue;
        }
        Value v = eval(body);
        if (!std::holds_alternative<bool>(v))
          throw std::runtime_error("assertion is not boolean");
        if (saw_assert && !last_truth_)
          throw std::runtime_error("non-final assertion was false");
        last_value = std::get<bool>(v);
        last_truth_ = last_value;
        saw_assert = true;
      }
    }
    if (!saw_assert) throw std::runtime_error("no assertions in script");
    return last_value;
  }

  // Every assertion before the last must hold under the model.
  bool last_truth() const { return last_truth_; }

private:
  // (= d3_7 <expr>) with d3_7 not yet bound defines it.
  bool defines(const Sexpr &body) const {
    return body.items.size() == 3 && body.items[0].is_atom() &&
           body.items[0].atom == "=" && body.items[1].is_atom() &&
           body.items[1].atom.size() > 1 && body.items[1].atom[0] == 'd' &&
           std::isdigit(static_cast<unsigned char>(body.items[1].atom[1])) &&
           bound_.find(body.items[1].atom) == bound_.end();
  }

  Value eval(const Sexpr &e) {
    if (e.is_atom()) return atom_value(e.atom);
    if (e.items.empty()) throw std::runtime_error("empty list");
    const std::string &op = e.items[0].atom;
    if (op == "not") return !b(eval(e.items[1]));
    if (op == "and") {
      bool v = true;
      for (size_t i = 1; i < e.items.size(); ++i) v = b(eval(e.items[i])) && v;
      return v;
    }
    if (op == "or") {
      bool v = false;
      for (size_t i = 1; i < e.items.size(); ++i) v = b(eval(e.items[i])) || v;
      return v;
    }
    if (op == "=>")
      return !b(eval(e.items[1])) || b(eval(e.items[2]));
    if (op == "ite")
      return b(eval(e.items[1])) ? eval(e.items[2]) : eval(e.items[3]);
    if (op == "=") {
      Value lhs = eval(e.items[1]);
      Value rhs = eval(e.items[2]);
      if (lhs.index() != rhs.index())
        throw std::runtime_error("sort mismatch in =");
      return lhs == rhs;
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      int64_t lhs = n(eval(e.items[1]));
      int64_t rhs = n(eval(e.items[2]));
      if (op == "<") return lhs < rhs;
      if (op == "<=") return lhs <= rhs;
      if (op == ">") return lhs > rhs;
      return lhs >= rhs;
    }
    if (op == "+") {
      int64_t v = 0;
      for (size_t i = 1; i < e.items.size(); ++i) v += n(eval(e.items[i]));
      return v;
    }
    if (op == "-") {
      if (e.items.size() == 2) return -n(eval(e.items[1]));
      int64_t v = n(eval(e.items[1]));
      for (size_t i = 2; i < e.items.size(); ++i) v -= n(eval(e.items[i]));
      return v;
    }
    if (op == "*") {
      int64_t v = 1;
      for (size_t i = 1; i < e.items.size(); ++i) v *= n(eval(e.items[i]));
      return v;
    }
    throw std::runtime_error("unsupported operator '" + op + "'");
  }

  Value atom_value(const std::string &name) {
    if (name == "true") return true;
    if (name == "false") return false;
    if (std::isdigit(static_cast<unsigned char>(name[0])))
      return static_cast<int64_t>(std::stoll(name));
    if (declared_.find(name) == declared_.end())
      throw std::runtime_error("undeclared symbol '" + name + "'");
    if (auto it = bound_.find(name); it != bound_.end()) return it->second;
    if (name.rfind("e_", 0) == 0)
      return w_.e(std::stoll(name.substr(2)));
    if (name.rfind("p_", 0) == 0) {
      size_t split = name.rfind('_');
      return w_.holds(name.substr(2, split - 2),
                      std::stoll(name.substr(split + 1)));
    }
    if (name.rfind("c_", 0) == 0) {
      size_t split = name.rfind('_');
      return delta_.at(name.substr(2, split - 2),
                       std::stoll(name.substr(split + 1)));
    }
    throw std::runtime_error("symbol '" + name + "' has no model value");
  }

  static bool b(const Value &v) {
    if (!std::holds_alternative<bool>(v))
      throw std::runtime_error("expected a boolean");
    return std::get<bool>(v);
  }

  static int64_t n(const Value &v) {
    if (!std::holds_alternative<int64_t>(v))
      throw std::runtime_error("expected an integer");
    return std::get<int64_t>(v);
  }

  const DenseWord &w_;
  const CounterValuation &delta_;
  std::map<std::string, Value> bound_;
  std::set<std::string> declared_;
  bool last_truth_ = true;
};

} // namespace aggtl::testsmt
