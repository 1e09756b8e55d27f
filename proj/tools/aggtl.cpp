// aggtl: checks metric temporal formulas with aggregate window modalities
// against finite timed traces. Subcommands: check, translate, gen, bench.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <atomic>
#include <thread>

#include "aggtl/checker.hpp"
#include "aggtl/oracle.hpp"
#include "aggtl/smt.hpp"

using namespace aggtl;
using nlohmann::json;

namespace {

enum ExitCode {
  kHolds = 0,
  kViolated = 1,
  kUsage = 2,
  kBackendError = 3,
  kDisagreement = 4,
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FormulaPtr load_formula(const std::string &inline_text,
                        const std::string &file) {
  if (inline_text.empty() == file.empty())
    throw ConfigError("provide exactly one of --formula and --formula-file");
  return parse_formula(inline_text.empty() ? read_file(file) : inline_text);
}

uint64_t resolve_instant(const std::string &text, const TimedWord &w) {
  if (text == "last") return w.last_timestamp();
  try {
    size_t used = 0;
    uint64_t value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception &) {
    throw ConfigError("instant must be a natural number or 'last'");
  }
}

json to_json(const CheckReport &r) {
  return json{{"verdict", r.verdict ? "holds" : "violated"},
              {"backend", backend_text(r.backend)},
              {"instant", r.instant},
              {"trace_entries", r.trace_entries},
              {"dense_length", r.dense_length},
              {"counters", r.counter_count},
              {"formula_nodes", r.formula_nodes},
              {"wall_ms", r.wall_ms}};
}

struct CheckArgs {
  std::string formula;
  std::string formula_file;
  std::string trace_file;
  std::string instant = "last";
  std::string backend = "counters";
  std::string format = "plain";
  bool lax = false;
  std::string solver;
  uint64_t solver_timeout = 60;
};

int cmd_check(const CheckArgs &args) {
  FormulaPtr f = load_formula(args.formula, args.formula_file);
  TimedWord w = parse_trace(read_file(args.trace_file));
  uint64_t instant = resolve_instant(args.instant, w);
  CheckOptions opts;
  opts.lax = args.lax;

  auto solver_config = [&]() -> SolverConfig {
    auto path = resolve_solver(args.solver);
    if (!path)
      throw SolverError("no SMT solver found; pass --solver or set "
                        "AGGTL_SOLVER, or use the counters backend");
    SolverConfig cfg{*path, args.solver_timeout, {}};
    probe_solver(cfg);
    return cfg;
  };

  std::vector<CheckReport> reports;
  if (args.backend == "oracle" || args.backend == "all")
    reports.push_back(check(f, w, instant, Backend::oracle, opts));
  if (args.backend == "counters" || args.backend == "all")
    reports.push_back(check(f, w, instant, Backend::counters, opts));
  if (args.backend == "smt") {
    reports.push_back(check_smt(f, w, instant, solver_config(), opts));
  } else if (args.backend == "all") {
    if (auto path = resolve_solver(args.solver)) {
      SolverConfig cfg{*path, args.solver_timeout, {}};
      probe_solver(cfg);
      reports.push_back(check_smt(f, w, instant, cfg, opts));
    } else {
      std::cerr << "note: no SMT solver found, cross-checking oracle and "
                   "counters backends only\n";
    }
  }

  bool agree = true;
  for (const auto &r : reports) agree = agree && r.verdict == reports[0].verdict;

  if (args.lax && args.backend == "all") {
    // Without the alternation precondition the backends are not guaranteed
    // to agree, so the cross-check is informational only.
    std::cerr << "warning: lax mode skips the backend cross-check\n";
    agree = true;
  }

  if (!agree) {
    if (args.format == "json") {
      json doc;
      doc["agree"] = false;
      for (const auto &r : reports) doc["backends"].push_back(to_json(r));
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cerr << "backend disagreement:\n";
      for (const auto &r : reports) std::cerr << "  " << r.to_line() << "\n";
    }
    return kDisagreement;
  }

  if (args.format == "json") {
    json doc;
    if (reports.size() == 1) {
      doc = to_json(reports[0]);
    } else {
      doc["agree"] = true;
      doc["verdict"] = reports[0].verdict ? "holds" : "violated";
      for (const auto &r : reports) doc["backends"].push_back(to_json(r));
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto &r : reports) std::cout << r.to_line() << "\n";
  }
  return reports[0].verdict ? kHolds : kViolated;
}

struct TranslateArgs {
  std::string formula;
  std::string formula_file;
  bool optimized = false;
  uint64_t kmax = 0;
};

int cmd_translate(const TranslateArgs &args) {
  FormulaPtr f = load_formula(args.formula, args.formula_file);
  Translation t =
      translate(to_pnf(desugar(f)), {args.optimized, args.kmax});
  std::cout << to_text(t);
  return kHolds;
}

struct GenArgs {
  uint64_t seed = 0;
  uint64_t horizon = 100;
  double sparseness = 1.0;
  std::vector<std::string> atoms;
  std::vector<std::string> pairs;
  std::string out;
};

int cmd_gen(const GenArgs &args) {
  GeneratorConfig cfg;
  cfg.seed = args.seed;
  cfg.horizon = args.horizon;
  cfg.sparseness = args.sparseness;
  for (const auto &spec : args.atoms) {
    size_t colon = spec.rfind(':');
    if (colon == std::string::npos) {
      cfg.alphabet.push_back({spec, 1.0});
    } else {
      cfg.alphabet.push_back(
          {spec.substr(0, colon), std::stod(spec.substr(colon + 1))});
    }
  }
  for (const auto &spec : args.pairs) {
    GeneratorConfig::PairSpec pair;
    std::istringstream in(spec);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(in, item, ',')) parts.push_back(item);
    if (parts.size() != 4)
      throw ConfigError("pair spec must be start,end,min,max");
    pair.start = parts[0];
    pair.end = parts[1];
    pair.min_duration = std::stoull(parts[2]);
    pair.max_duration = std::stoull(parts[3]);
    cfg.pairs.push_back(pair);
  }
  std::string text = serialize(generate_trace(cfg));
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out.good()) throw ConfigError("cannot write '" + args.out + "'");
    out << text;
  }
  return kHolds;
}

struct BenchArgs {
  std::string formula;
  std::string formula_file;
  std::string lengths = "100:2000:100";
  std::string windows;    // K sweep
  std::string bounds;     // n sweep
  std::string sparseness = "0.5";
  uint64_t reps = 10;
  uint64_t seed = 1;
  uint64_t jobs = 1;
  std::string backend = "counters";
  std::string solver;
  uint64_t solver_timeout = 60;
};

std::vector<uint64_t> parse_sweep(const std::string &text) {
  std::vector<uint64_t> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    uint64_t from = 0, to = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    in >> from >> c1 >> to >> c2 >> step;
    if (!in || c1 != ':' || c2 != ':' || step == 0 || to < from)
      throw ConfigError("sweep must be from:to:step or a comma list");
    for (uint64_t v = from; v <= to; v += step) out.push_back(v);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoull(item));
  return out;
}

std::vector<double> parse_sweep_real(const std::string &text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

// Rebuilds the formula with every aggregate window and/or bound replaced by
// the swept value.
FormulaPtr override_params(const FormulaPtr &f, std::optional<uint64_t> window,
                           std::optional<uint64_t> bound) {
  Formula copy = *f;
  if (is_aggregate(f->kind)) {
    if (window) {
      copy.window = *window;
      if (copy.block > copy.window) copy.block = copy.window;
    }
    if (bound) copy.bound = *bound;
  }
  if (f->lhs) copy.lhs = override_params(f->lhs, window, bound);
  if (f->rhs) copy.rhs = override_params(f->rhs, window, bound);
  return std::make_shared<const Formula>(std::move(copy));
}

void collect_aggregate_atoms(const FormulaPtr &f, GeneratorConfig &cfg) {
  if (f->kind == FKind::dist) {
    bool seen = false;
    for (const auto &p : cfg.pairs) seen = seen || p.start == f->atom;
    if (!seen) cfg.pairs.push_back({f->atom, f->atom2, 1, 8});
  } else if (!f->atom.empty() && f->kind != FKind::neg_atom) {
    bool seen = false;
    for (const auto &a : cfg.alphabet) seen = seen || a.name == f->atom;
    if (!seen) cfg.alphabet.push_back({f->atom, 0.9});
  }
  if (f->lhs) collect_aggregate_atoms(f->lhs, cfg);
  if (f->rhs) collect_aggregate_atoms(f->rhs, cfg);
}

uint64_t first_bound(const FormulaPtr &f) {
  if (is_aggregate(f->kind)) return f->bound;
  uint64_t b = 0;
  if (f->lhs) b = first_bound(f->lhs);
  if (b == 0 && f->rhs) b = first_bound(f->rhs);
  return b;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ull) ^
               (b * 0xbf58476d1ce4e5b9ull) ^ (c * 0x94d049bb133111ebull);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  return x;
}

int cmd_bench(const BenchArgs &args) {
  FormulaPtr base = load_formula(args.formula, args.formula_file);
  std::vector<uint64_t> lengths = parse_sweep(args.lengths);
  std::vector<uint64_t> windows = parse_sweep(args.windows);
  std::vector<uint64_t> bounds = parse_sweep(args.bounds);
  std::vector<double> densities = parse_sweep_real(args.sparseness);
  if (lengths.empty() || densities.empty() || args.reps == 0)
    throw ConfigError("empty sweep");
  Backend backend;
  if (args.backend == "counters") backend = Backend::counters;
  else if (args.backend == "oracle") backend = Backend::oracle;
  else backend = Backend::smt;

  std::optional<SolverConfig> solver;
  if (backend == Backend::smt) {
    auto path = resolve_solver(args.solver);
    if (!path) throw SolverError("bench with the smt backend needs a solver");
    solver = SolverConfig{*path, args.solver_timeout, {}};
    probe_solver(*solver);
  }

  std::vector<std::optional<uint64_t>> window_points;
  if (windows.empty()) window_points.push_back(std::nullopt);
  for (uint64_t k : windows) window_points.push_back(k);
  std::vector<std::optional<uint64_t>> bound_points;
  if (bounds.empty()) bound_points.push_back(std::nullopt);
  for (uint64_t n : bounds) bound_points.push_back(n);

  std::cout << "run-id,backend,trace-length,sparseness,K,n,wall-time-ms,"
               "verdict\n";
  uint64_t run_id = 0;
  for (uint64_t length : lengths) {
    for (double density : densities) {
      for (const auto &wp : window_points) {
        for (const auto &np : bound_points) {
          FormulaPtr f = override_params(base, wp, np);
          GeneratorConfig gen;
          gen.horizon = length;
          gen.sparseness = density;
          collect_aggregate_atoms(f, gen);
          if (gen.alphabet.empty() && gen.pairs.empty())
            gen.alphabet.push_back({"p", 0.9});

          std::vector<double> times(args.reps, 0.0);
          std::vector<bool> verdicts(args.reps, false);
          std::atomic<uint64_t> next{0};
          auto worker = [&] {
            for (;;) {
              uint64_t rep = next.fetch_add(1);
              if (rep >= args.reps) return;
              GeneratorConfig local = gen;
              local.seed = mix_seed(args.seed, run_id, rep, length);
              TimedWord trace = generate_trace(local);
              uint64_t instant = trace.last_timestamp();
              CheckReport report =
                  solver ? check_smt(f, trace, instant, *solver)
                         : check(f, trace, instant, backend);
              times[rep] = report.wall_ms;
              verdicts[rep] = report.verdict;
            }
          };
          if (args.jobs <= 1) {
            worker();
          } else {
            std::vector<std::thread> pool;
            for (uint64_t j = 0; j < args.jobs; ++j)
              pool.emplace_back(worker);
            for (auto &th : pool) th.join();
          }

          double mean = std::accumulate(times.begin(), times.end(), 0.0) /
                        static_cast<double>(args.reps);
          bool all_hold = true;
          bool none_hold = true;
          for (bool v : verdicts) {
            all_hold = all_hold && v;
            none_hold = none_hold && !v;
          }
          const char *verdict =
              all_hold ? "holds" : (none_hold ? "violated" : "mixed");
          std::cout << run_id << ',' << backend_text(backend) << ',' << length
                    << ',' << density << ','
                    << (wp ? *wp : max_window(f)) << ','
                    << (np ? *np : first_bound(f)) << ',' << mean << ','
                    << verdict << "\n";
          ++run_id;
        }
      }
    }
  }
  return kHolds;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Offline trace checker for a metric temporal logic with "
               "aggregate window modalities"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App *check_cmd =
      app.add_subcommand("check", "Check a formula against a trace");
  check_cmd->add_option("-f,--formula", check_args.formula, "Formula text");
  check_cmd->add_option("--formula-file", check_args.formula_file,
                        "File containing the formula");
  check_cmd->add_option("-t,--trace", check_args.trace_file, "Trace file")
      ->required();
  check_cmd->add_option("-i,--instant", check_args.instant,
                        "Evaluation instant, a timestamp or 'last'");
  check_cmd
      ->add_option("-b,--backend", check_args.backend,
                   "oracle, counters, smt, or all")
      ->check(CLI::IsMember({"oracle", "counters", "smt", "all"}));
  check_cmd->add_option("--format", check_args.format, "plain or json")
      ->check(CLI::IsMember({"plain", "json"}));
  check_cmd->add_flag("--lax", check_args.lax,
                      "Evaluate pair axioms as written on traces that "
                      "violate start/end alternation");
  check_cmd->add_option("--solver", check_args.solver, "SMT solver binary");
  check_cmd->add_option("--solver-timeout", check_args.solver_timeout,
                        "Solver timeout in seconds");

  TranslateArgs translate_args;
  CLI::App *translate_cmd = app.add_subcommand(
      "translate", "Print the counter-logic translation of a formula");
  translate_cmd->add_option("-f,--formula", translate_args.formula,
                            "Formula text");
  translate_cmd->add_option("--formula-file", translate_args.formula_file,
                            "File containing the formula");
  translate_cmd->add_flag("--optimized", translate_args.optimized,
                          "Bound count counters by a modulus");
  translate_cmd->add_option("--kmax", translate_args.kmax,
                            "Modulus base; defaults to the largest window");

  GenArgs gen_args;
  CLI::App *gen_cmd =
      app.add_subcommand("gen", "Generate a synthetic trace");
  gen_cmd->add_option("--seed", gen_args.seed, "Generator seed");
  gen_cmd->add_option("--horizon", gen_args.horizon, "Largest timestamp");
  gen_cmd->add_option("--sparseness", gen_args.sparseness,
                      "Fraction of instants carrying events, in (0,1]");
  gen_cmd->add_option("--atom", gen_args.atoms,
                      "Atom spec name[:probability], repeatable");
  gen_cmd->add_option("--pair", gen_args.pairs,
                      "Pair spec start,end,min,max, repeatable");
  gen_cmd->add_option("-o,--out", gen_args.out, "Output file, '-' for stdout");

  BenchArgs bench_args;
  CLI::App *bench_cmd =
      app.add_subcommand("bench", "Run benchmark sweeps, CSV on stdout");
  bench_cmd->add_option("-f,--formula", bench_args.formula, "Formula text");
  bench_cmd->add_option("--formula-file", bench_args.formula_file,
                        "File containing the formula");
  bench_cmd->add_option("--lengths", bench_args.lengths,
                        "Trace lengths, from:to:step or comma list");
  bench_cmd->add_option("--K", bench_args.windows,
                        "Window sweep applied to every aggregate");
  bench_cmd->add_option("--n", bench_args.bounds,
                        "Bound sweep applied to every aggregate");
  bench_cmd->add_option("--sparseness", bench_args.sparseness,
                        "Comma list of sparseness values");
  bench_cmd->add_option("--reps", bench_args.reps,
                        "Repetitions per parameter point");
  bench_cmd->add_option("--seed", bench_args.seed, "Master seed");
  bench_cmd->add_option("--jobs", bench_args.jobs,
                        "Concurrent repetitions (1 keeps timings quiet)");
  bench_cmd
      ->add_option("-b,--backend", bench_args.backend,
                   "oracle, counters, or smt")
      ->check(CLI::IsMember({"oracle", "counters", "smt"}));
  bench_cmd->add_option("--solver", bench_args.solver, "SMT solver binary");
  bench_cmd->add_option("--solver-timeout", bench_args.solver_timeout,
                        "Solver timeout in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check_args);
    if (translate_cmd->parsed()) return cmd_translate(translate_args);
    if (gen_cmd->parsed()) return cmd_gen(gen_args);
    return cmd_bench(bench_args);
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBackendError;
  } catch (const AlternationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBackendError;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kBackendError;
  }
}
