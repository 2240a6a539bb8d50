// tcsat: solve, cross-check, generate and benchmark sparse threshold circuits,
// symmetric circuits and small integer programs.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tcsat/bench.hpp"
#include "tcsat/error.hpp"
#include "tcsat/io.hpp"
#include "tcsat/oracle.hpp"
#include "tcsat/sparse_sat.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;

struct SolveArgs {
  std::string kind;
  std::string file;
  std::optional<std::uint64_t> seed;
  bool force_restriction = false;
  int max_assigned = 30;
  int threads = 1;
  std::optional<double> p;
};

int report(const std::optional<tcsat::Assignment>& witness, const tcsat::WorkCounters& counters) {
  if (witness) {
    std::cout << "SAT " << tcsat::io::format_witness(*witness) << '\n';
  } else {
    std::cout << "UNSAT\n";
  }
  std::cerr << "c " << counters << '\n';
  return witness ? kExitSat : kExitUnsat;
}

int run_solve(const SolveArgs& args, bool use_oracle) {
  const std::string text = tcsat::io::read_file(args.file);
  if (args.kind == "circuit") {
    const auto circuit = tcsat::io::parse_circuit(text);
    if (use_oracle) {
      tcsat::WorkCounters counters;
      const auto w = tcsat::oracle::brute_circuit_sat(circuit);
      return report(w, counters);
    }
    tcsat::SolveOptions opts;
    opts.seed = args.seed;
    opts.force_restriction = args.force_restriction;
    opts.max_assigned = args.max_assigned;
    opts.threads = args.threads;
    opts.p_override = args.p;
    const auto r = tcsat::solve(circuit, opts);
    std::cerr << "c path=" << (r.path == tcsat::SolvePath::kExhaustive ? "exhaustive" : "restriction")
              << " p=" << r.p_used << " free=" << r.free_count << " exceptional=" << r.exceptional << '\n';
    return report(r.witness, r.counters);
  }
  if (args.kind == "symmetric") {
    const auto circuit = tcsat::io::parse_symmetric(text);
    if (use_oracle) return report(tcsat::oracle::brute_symmetric_sat(circuit), {});
    tcsat::SymSolveOptions opts;
    opts.seed = args.seed;
    opts.force_restriction = args.force_restriction;
    opts.max_assigned = args.max_assigned;
    opts.threads = args.threads;
    opts.p_override = args.p;
    const auto r = tcsat::solve_symmetric(circuit, opts);
    std::cerr << "c p=" << r.p_used << " free=" << r.free_count << '\n';
    return report(r.witness, r.counters);
  }
  const auto sys = tcsat::io::parse_ilp(text);
  if (use_oracle) return report(tcsat::oracle::brute_ilp(sys), {});
  const auto r = tcsat::solve_ilp(sys);
  return report(r.witness, r.counters);
}

void add_solve_flags(CLI::App* cmd, SolveArgs& args) {
  cmd->add_option("kind", args.kind, "Instance kind")
      ->required()
      ->check(CLI::IsMember({"circuit", "symmetric", "ilp"}));
  cmd->add_option("file", args.file, "Instance file")->required();
  cmd->add_option("--seed", args.seed, "Restriction seed");
  cmd->add_flag("--force-restriction", args.force_restriction, "Skip the small-n exhaustive path");
  cmd->add_option("--max-assigned", args.max_assigned, "Refuse restrictions assigning more variables")
      ->check(CLI::Range(0, 62));
  cmd->add_option("--threads", args.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--p", args.p, "Override the restriction probability")->check(CLI::Range(0.0, 1.0));
}

const std::map<std::string, tcsat::oracle::FaninDist> kDists{
    {"uniform", tcsat::oracle::FaninDist::kUniform},
    {"adversarial", tcsat::oracle::FaninDist::kAdversarialPow2},
    {"fixed", tcsat::oracle::FaninDist::kFixed},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability for sparse depth-two threshold and symmetric circuits"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Run the structured solver");
  add_solve_flags(solve_cmd, solve_args);

  SolveArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answer");
  add_solve_flags(oracle_cmd, oracle_args);

  tcsat::oracle::GenSpec gen;
  std::string gen_kind = "circuit";
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance to standard output");
  gen_cmd->add_option("kind", gen_kind, "Instance kind")->check(CLI::IsMember({"circuit", "symmetric", "ilp"}));
  gen_cmd->add_option("--n", gen.n, "Variables")->check(CLI::Range(1, 62));
  gen_cmd->add_option("--c", gen.c, "Wires per variable")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--rows", gen.rows, "ILP rows")->check(CLI::Range(1, 62));
  gen_cmd->add_option("--weight-bound", gen.weight_bound, "Weights drawn from [-w, w]")->check(CLI::Range(1, 1 << 20));
  gen_cmd->add_option("--arity", gen.arity, "ILP variable arity")->check(CLI::Range(2, 16));
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--dist", gen.distribution, "Fan-in distribution")
      ->transform(CLI::CheckedTransformer(kDists, CLI::ignore_case));
  gen_cmd->add_option("--fanin", gen.fixed_fanin, "Fan-in for --dist fixed")->check(CLI::PositiveNumber);

  tcsat::bench::BenchConfig bench;
  std::string suite = "sparse";
  bool no_oracle = false;
  bool no_force = false;
  auto* bench_cmd = app.add_subcommand("bench", "Emit a CSV table of counters and timings");
  bench_cmd->add_option("--suite", suite, "sparse | symmetric | ilp | vecdom")
      ->check(CLI::IsMember({"sparse", "symmetric", "ilp", "vecdom"}));
  bench_cmd->add_option("--n-min", bench.n_min, "Smallest n")->check(CLI::Range(1, 1 << 20));
  bench_cmd->add_option("--n-max", bench.n_max, "Largest n")->check(CLI::Range(1, 1 << 20));
  bench_cmd->add_option("--count", bench.count, "Instances per n")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--c", bench.c, "Wires per variable")->check(CLI::Range(1, 64));
  bench_cmd->add_option("--rows", bench.rows, "ILP rows or vector dimension")->check(CLI::Range(1, 62));
  bench_cmd->add_option("--arity", bench.arity, "ILP arity")->check(CLI::Range(2, 16));
  bench_cmd->add_option("--weight-bound", bench.weight_bound, "Weight magnitude")->check(CLI::Range(1, 1 << 20));
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--dist", bench.distribution, "Fan-in distribution")
      ->transform(CLI::CheckedTransformer(kDists, CLI::ignore_case));
  bench_cmd->add_option("--fanin", bench.fixed_fanin, "Fan-in for --dist fixed")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--p", bench.p, "Override the restriction probability")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--no-oracle", no_oracle, "Skip the brute-force rows");
  bench_cmd->add_flag("--no-force", no_force, "Allow the small-n exhaustive path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return run_solve(solve_args, false);
    if (*oracle_cmd) return run_solve(oracle_args, true);
    if (*gen_cmd) {
      if (gen_kind == "circuit") {
        std::cout << tcsat::io::emit_circuit(tcsat::oracle::generate_circuit(gen));
      } else if (gen_kind == "symmetric") {
        std::cout << tcsat::io::emit_symmetric(tcsat::oracle::generate_symmetric(gen));
      } else {
        std::cout << tcsat::io::emit_ilp(tcsat::oracle::generate_ilp(gen));
      }
      return 0;
    }
    if (*bench_cmd) {
      static const std::map<std::string, tcsat::bench::Suite> suites{
          {"sparse", tcsat::bench::Suite::kSparse},
          {"symmetric", tcsat::bench::Suite::kSymmetric},
          {"ilp", tcsat::bench::Suite::kIlp},
          {"vecdom", tcsat::bench::Suite::kVecdom},
      };
      bench.suite = suites.at(suite);
      bench.with_oracle = !no_oracle;
      bench.force_restriction = !no_force;
      std::cout << tcsat::bench::header() << '\n';
      for (const auto& rec : tcsat::bench::run_bench(bench))
        std::cout << tcsat::bench::format_record(rec) << '\n';
      return 0;
    }
  } catch (const tcsat::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
