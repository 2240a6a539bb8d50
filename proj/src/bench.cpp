#include "tcsat/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tcsat/sparse_sat.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"
#include "tcsat/vecdom.hpp"

namespace tcsat::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

// Lexicographic rank of the oracle witness: evaluations the oracle performed.
std::uint64_t oracle_work(const std::optional<Assignment>& w, int n, int arity) {
  if (!w) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(arity);
    return total;
  }
  std::uint64_t rank = 0;
  for (auto v : w->values) rank = rank * static_cast<std::uint64_t>(arity) + v;
  return rank + 1;
}

std::string verdict(bool sat) { return sat ? "SAT" : "UNSAT"; }

void check_agreement(const BenchRecord& solver, const BenchRecord& oracle) {
  if (solver.verdict != oracle.verdict)
    throw std::runtime_error("verdict mismatch on " + solver.instance + ": " + solver.solver + " says " +
                             solver.verdict + ", oracle says " + oracle.verdict);
}

}  // namespace

double BenchRecord::empirical_exponent() const {
  if (n <= 0) return 0.0;
  const double total = static_cast<double>(std::max<std::uint64_t>(counters.total(), 1));
  return std::log2(total) / n;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> out;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (int i = 0; i < config.count; ++i) {
      oracle::GenSpec spec;
      spec.n = n;
      spec.c = config.c;
      spec.rows = config.rows;
      spec.arity = config.arity;
      spec.weight_bound = config.weight_bound;
      spec.seed = config.seed + static_cast<std::uint64_t>(1000 * n + i);
      spec.distribution = config.distribution;
      spec.fixed_fanin = config.fixed_fanin;
      const std::string id = std::to_string(n) + "-" + std::to_string(spec.seed);

      switch (config.suite) {
        case Suite::kSparse: {
          const auto circuit = oracle::generate_circuit(spec);
          SolveOptions opts;
          opts.force_restriction = config.force_restriction;
          opts.p_override = config.p;
          opts.threads = config.threads;
          opts.seed = spec.seed;
          auto start = Clock::now();
          const auto r = solve(circuit, opts);
          BenchRecord rec{"tc-" + id, n, static_cast<double>(circuit.wires()) / n, "sparse_sat",
                          verdict(r.witness.has_value()), elapsed_ns(start), r.counters};
          out.push_back(rec);
          if (config.with_oracle) {
            start = Clock::now();
            const auto w = oracle::brute_circuit_sat(circuit);
            BenchRecord o{rec.instance, n, rec.c, "oracle", verdict(w.has_value()), elapsed_ns(start), {}};
            o.counters.assignments = oracle_work(w, n, 2);
            check_agreement(rec, o);
            out.push_back(o);
          }
          break;
        }
        case Suite::kSymmetric: {
          spec.weight_bound = std::min(config.weight_bound, 3);
          const auto circuit = oracle::generate_symmetric(spec);
          SymSolveOptions opts;
          opts.force_restriction = config.force_restriction;
          opts.p_override = config.p;
          opts.threads = config.threads;
          opts.seed = spec.seed;
          auto start = Clock::now();
          const auto r = solve_symmetric(circuit, opts);
          BenchRecord rec{"sc-" + id, n, static_cast<double>(circuit.weighted_wires()) / n, "symsat",
                          verdict(r.witness.has_value()), elapsed_ns(start), r.counters};
          out.push_back(rec);
          if (config.with_oracle) {
            start = Clock::now();
            const auto w = oracle::brute_symmetric_sat(circuit);
            BenchRecord o{rec.instance, n, rec.c, "oracle", verdict(w.has_value()), elapsed_ns(start), {}};
            o.counters.assignments = oracle_work(w, n, 2);
            check_agreement(rec, o);
            out.push_back(o);
          }
          break;
        }
        case Suite::kIlp: {
          const auto sys = oracle::generate_ilp(spec);
          auto start = Clock::now();
          const auto r = solve_ilp(sys);
          BenchRecord rec{"ilp-" + id, n, static_cast<double>(sys.rows.size()) / n, "splitlist",
                          verdict(r.witness.has_value()), elapsed_ns(start), r.counters};
          out.push_back(rec);
          if (config.with_oracle) {
            start = Clock::now();
            const auto w = oracle::brute_ilp(sys);
            BenchRecord o{rec.instance, n, rec.c, "oracle", verdict(w.has_value()), elapsed_ns(start), {}};
            o.counters.assignments = oracle_work(w, n, sys.arity);
            check_agreement(rec, o);
            out.push_back(o);
          }
          break;
        }
        case Suite::kVecdom: {
          const auto inst = oracle::generate_vectors(spec);
          auto start = Clock::now();
          const auto r = find_dominating_pair(inst);
          BenchRecord rec{"vd-" + id, n, static_cast<double>(inst.dim()), "vecdom",
                          verdict(r.pair.has_value()), elapsed_ns(start), {}};
          rec.counters.comparisons = r.counters.comparisons;
          rec.counters.recursion_nodes = r.counters.recursion_nodes;
          out.push_back(rec);
          if (config.with_oracle) {
            start = Clock::now();
            const auto p = oracle::brute_domination(inst);
            BenchRecord o{rec.instance, n, rec.c, "oracle", verdict(p.has_value()), elapsed_ns(start), {}};
            o.counters.comparisons = p ? p->index_a * inst.b.size() + p->index_b + 1 : inst.a.size() * inst.b.size();
            check_agreement(rec, o);
            out.push_back(o);
          }
          break;
        }
      }
    }
  }
  return out;
}

std::string header() {
  return "instance,n,c,solver,verdict,wall_time_ns,assignments,vectors,comparisons,guesses,eq_solves,"
         "total_ops,empirical_exponent";
}

std::string format_record(const BenchRecord& r) {
  char c_buf[32], e_buf[32];
  std::snprintf(c_buf, sizeof c_buf, "%.4f", r.c);
  std::snprintf(e_buf, sizeof e_buf, "%.6f", r.empirical_exponent());
  std::ostringstream os;
  os << r.instance << ',' << r.n << ',' << c_buf << ',' << r.solver << ',' << r.verdict << ','
     << r.wall_time_ns << ',' << r.counters.assignments << ',' << r.counters.vectors << ','
     << r.counters.comparisons << ',' << r.counters.guesses << ',' << r.counters.eq_solves << ','
     << r.counters.total() << ',' << e_buf;
  return os.str();
}

}  // namespace tcsat::bench
