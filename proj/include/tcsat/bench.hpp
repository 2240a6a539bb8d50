#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcsat/counters.hpp"
#include "tcsat/oracle.hpp"

namespace tcsat::bench {

struct BenchRecord {
  std::string instance;
  int n = 0;
  double c = 0.0;
  std::string solver;
  std::string verdict;  // SAT or UNSAT
  std::uint64_t wall_time_ns = 0;
  WorkCounters counters;

  /// log2(total basic operations) / n; 0 for n == 0.
  double empirical_exponent() const;
};

enum class Suite { kSparse, kSymmetric, kIlp, kVecdom };

struct BenchConfig {
  Suite suite = Suite::kSparse;
  int n_min = 12;
  int n_max = 16;
  int count = 4;  // instances per n
  int c = 1;
  int rows = 3;   // ILP rows or vector dimension
  int arity = 2;
  int weight_bound = 10;
  std::uint64_t seed = 1;
  oracle::FaninDist distribution = oracle::FaninDist::kUniform;
  int fixed_fanin = 3;
  std::optional<double> p;
  bool force_restriction = true;
  bool with_oracle = true;  // add a brute-force row per instance
  int threads = 1;
};

/// One record per (instance, solver). Throws std::runtime_error when a
/// solver verdict disagrees with the oracle.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string header();
std::string format_record(const BenchRecord& r);

/// Column count of every line produced by header() and format_record().
constexpr std::size_t kColumns = 13;

}  // namespace tcsat::bench
