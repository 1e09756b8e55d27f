#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>
#include <sys/stat.h>
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <regex>

#include "aggtl/oracle.hpp"
#include "aggtl/smt.hpp"
#include "support/gen.hpp"
#include "support/smt2_eval.hpp"

using namespace aggtl;

namespace {

SmtScript script_for(const std::string &formula, const std::string &trace,
                     uint64_t instant, TranslateOptions opts = {}) {
  DenseWord w = expand(parse_trace(trace));
  Translation t = translate(to_pnf(desugar(parse_formula(formula))), opts);
  return emit(t, w, instant);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Minimal executable stand-in for a solver binary.
std::string fake_solver(const std::string &body) {
  std::string path = "/tmp/aggtl-fake-XXXXXX";
  int fd = mkstemp(path.data());
  REQUIRE(fd >= 0);
  std::string text = "#!/bin/sh\n" + body + "\n";
  REQUIRE(write(fd, text.data(), text.size()) ==
          static_cast<ssize_t>(text.size()));
  close(fd);
  chmod(path.c_str(), 0755);
  return path;
}

} // namespace

TEST_CASE("emission is deterministic") {
  SmtScript a = script_for("G(p -> C[5]<3(q))", "0: p\n2: q\n7: p,q\n", 7);
  SmtScript b = script_for("G(p -> C[5]<3(q))", "0: p\n2: q\n7: p,q\n", 7);
  CHECK(a.text == b.text);
  CHECK(a.bound == 9);
  SmtScript c = script_for("G(p -> C[5]<3(q))", "0: p\n2: q\n7: p,q\n", 2);
  CHECK(a.text != c.text);
}

TEST_CASE("scripts match their goldens") {
  // The worked pipeline shape: a count formula over a short trace with the
  // goal fixed at instant 5.
  SmtScript count = script_for("C[5]<3(p)", "0: p\n1: q\n3: p\n4: p\n6: q\n", 5);
  CHECK(count.text == read_file(GOLDEN_DIR "/count_basic.smt2"));

  SmtScript dist = script_for("D[4]>=1(u, v)", "0: u\n2: v\n5: x\n", 4);
  CHECK(dist.text == read_file(GOLDEN_DIR "/dist_basic.smt2"));
}

TEST_CASE("every referenced position stays inside the bound") {
  testgen::Rng rng(301);
  std::regex var("(?:e|p_[A-Za-z0-9_]+?|c_[A-Za-z0-9_]+?)_([0-9]+)");
  for (int round = 0; round < 25; ++round) {
    TimedWord trace = testgen::random_trace(rng, 10, 40);
    FormulaPtr f = testgen::random_formula(rng, 3);
    DenseWord w = expand(trace);
    Translation t = translate(to_pnf(desugar(f)));
    SmtScript s = emit(t, w, testgen::random_instant(rng, trace));
    for (auto it = std::sregex_iterator(s.text.begin(), s.text.end(), var);
         it != std::sregex_iterator(); ++it) {
      uint64_t pos = std::stoull((*it)[1]);
      CHECK(pos <= s.bound);
    }
  }
}

TEST_CASE("scripts are consistent with the reference model") {
  testgen::Rng rng(307);
  int violated = 0;
  for (int round = 0; round < 250; ++round) {
    TimedWord trace = testgen::random_trace(rng, 10, 60);
    DenseWord w = expand(trace);
    FormulaPtr f = testgen::random_formula(rng, 3);
    Translation t = translate(to_pnf(desugar(f)));
    CounterValuation delta = compute_counters(t, w, /*lax=*/true);
    uint64_t instant = testgen::random_instant(rng, trace);
    SmtScript s = emit(t, w, instant);

    bool verdict = eval_cltlb(t.goal, w, delta, static_cast<int64_t>(instant));
    testsmt::ModelChecker checker(w, delta);
    // Every assertion except the negated goal holds under the model; the
    // negated goal holds exactly when the property is violated.
    bool negated_goal = checker.run(s.text);
    CHECK(negated_goal == !verdict);
    violated += verdict ? 0 : 1;
  }
  CHECK(violated > 20); // both outcomes exercised
  CHECK(violated < 230);
}

TEST_CASE("optimized encodings remain model-consistent") {
  testgen::Rng rng(311);
  for (int round = 0; round < 60; ++round) {
    TimedWord trace = testgen::random_trace(rng, 10, 40);
    DenseWord w = expand(trace);
    uint64_t k = rng.range(1, 20);
    FormulaPtr f = mk_count(k, testgen::random_cmp(rng), rng.range(0, 5),
                            testgen::random_atom(rng));
    Translation t = translate(to_pnf(f), {true, k});
    CounterValuation delta = compute_counters(t, w);
    uint64_t instant = testgen::random_instant(rng, trace);
    SmtScript s = emit(t, w, instant);
    bool verdict = eval_cltlb(t.goal, w, delta, static_cast<int64_t>(instant));
    testsmt::ModelChecker checker(w, delta);
    CHECK(checker.run(s.text) == !verdict);
  }
}

TEST_CASE("solver driver parses the first result token") {
  SmtScript trivial{"(assert true)\n(check-sat)\n", 1};

  SolverConfig unsat_solver{fake_solver("echo unsat"), 5, {}};
  SolverOutcome out = run(trivial, unsat_solver);
  CHECK(out.status == SolverStatus::unsat);
  CHECK(interpret(out) == true);

  SolverConfig sat_solver{fake_solver("echo sat; echo unsat"), 5, {}};
  out = run(trivial, sat_solver);
  CHECK(out.status == SolverStatus::sat);
  CHECK(interpret(out) == false);

  SolverConfig chatty{fake_solver("echo '(error \"boom\")'; echo unknown"), 5, {}};
  out = run(trivial, chatty);
  CHECK(out.status == SolverStatus::unknown);
  CHECK_THROWS_AS(interpret(out), SolverError);

  SolverConfig garbage{fake_solver("echo nonsense; exit 3"), 5, {}};
  out = run(trivial, garbage);
  CHECK(out.status == SolverStatus::solver_error);
  CHECK_THROWS_AS(interpret(out), SolverError);
}

TEST_CASE("solver timeouts surface as unknown") {
  SolverConfig slow{fake_solver("sleep 30; echo unsat"), 1, {}};
  SmtScript trivial{"(check-sat)\n", 1};
  SolverOutcome out = run(trivial, slow);
  CHECK(out.status == SolverStatus::unknown);
  CHECK(out.wall_ms >= 900);
  CHECK(out.wall_ms < 5000);
}

TEST_CASE("missing binaries are reported with a remediation hint") {
  SmtScript trivial{"(check-sat)\n", 1};
  SolverConfig missing{"/nonexistent/solver", 5, {}};
  try {
    run(trivial, missing);
    FAIL("expected a solver error");
  } catch (const SolverError &err) {
    CHECK(std::string(err.what()).find("counters backend") !=
          std::string::npos);
  }
}

TEST_CASE("sanity probe expects unsat") {
  probe_solver({fake_solver("echo unsat"), 5, {}});
  CHECK_THROWS_AS(probe_solver({fake_solver("echo sat"), 5, {}}), SolverError);
}

TEST_CASE("resolution prefers the explicit path, then the environment") {
  CHECK(resolve_solver("/some/solver") == "/some/solver");
  setenv("AGGTL_SOLVER", "/env/solver", 1);
  CHECK(resolve_solver("") == "/env/solver");
  unsetenv("AGGTL_SOLVER");
}

TEST_CASE("full solver-backed pipeline against a scripted solver") {
  TimedWord w = parse_trace("0: p\n3: q\n");
  FormulaPtr f = parse_formula("C[4]>=1(p)");
  SolverConfig cfg{fake_solver("echo unsat"), 5, {}};
  CheckReport report = check_smt(f, w, 3, cfg);
  CHECK(report.verdict == true);
  CHECK(report.backend == Backend::smt);
  CHECK(report.dense_length == 5);
}

TEST_CASE("every declared variable appears in at least one assertion") {
  testgen::Rng rng(317);
  for (int round = 0; round < 20; ++round) {
    TimedWord trace = testgen::random_trace(rng, 10, 40);
    DenseWord w = expand(trace);
    FormulaPtr f = testgen::random_formula(rng, 3);
    Translation t = translate(to_pnf(desugar(f)));
    SmtScript s = emit(t, w, testgen::random_instant(rng, trace));

    auto forms = testsmt::parse_script(s.text);
    std::set<std::string> declared;
    std::set<std::string> used;
    std::function<void(const testsmt::Sexpr &)> scan =
        [&](const testsmt::Sexpr &e) {
          if (e.is_atom()) {
            used.insert(e.atom);
            return;
          }
          for (const auto &item : e.items) scan(item);
        };
    for (const auto &form : forms) {
      if (form.items.empty() || !form.items[0].is_atom()) continue;
      if (form.items[0].atom == "declare-fun")
        declared.insert(form.items[1].atom);
      else if (form.items[0].atom == "assert")
        scan(form.items[1]);
    }
    for (const auto &name : declared) {
      if (!used.count(name)) CAPTURE(name);
      CHECK(used.count(name) == 1);
    }
  }
}
