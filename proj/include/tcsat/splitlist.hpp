#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tcsat/counters.hpp"
#include "tcsat/model.hpp"
#include "tcsat/vecdom.hpp"

namespace tcsat {

enum class Relation { kGe, kGt, kLe, kLt, kEq };

struct LinearRow {
  std::vector<WeightedInput> terms;
  Relation rel = Relation::kGe;
  std::int64_t rhs = 0;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

/// Linear inequality system over variables with values in [0, arity).
struct IneqSystem {
  int n_vars = 0;
  int arity = 2;
  std::vector<LinearRow> rows;

  void validate() const;

  friend bool operator==(const IneqSystem&, const IneqSystem&) = default;
};

/// How strict rows (sum < t, sum > t) become non-strict ones.
enum class StrictRewrite {
  kIntegral,   // sum < t  <=>  sum <= t - 1, exact for integer weights
  kMinWeight,  // sum < t  <=>  -sum >= -t + min_i |w_i|; only exact when gaps are unit-granular
};

/// Rewrites one row into equivalent ">=" rows (two for EQ).
std::vector<LinearRow> to_ge_rows(const LinearRow& row,
                                  StrictRewrite strict = StrictRewrite::kIntegral);

/// All rows of the system as ">=" rows.
std::vector<LinearRow> normalize(const IneqSystem& sys,
                                 StrictRewrite strict = StrictRewrite::kIntegral);

/// Vectors for one half of the variables. For the first half a_j is the
/// row-j partial sum; for the second half b_j = rhs_j minus the partial sum.
/// Tags pack the half-assignment in radix `arity`, lowest variable first.
struct HalfList {
  std::vector<int> vars;
  VectorSet vectors;
};

enum class Half { kFirst, kSecond };

HalfList list_half(const std::vector<LinearRow>& ge_rows, std::vector<int> vars, int arity,
                   Half side);

struct SplitListOptions {
  int max_half = 28;  // refuse halves with more variables than this
};

struct IlpResult {
  std::optional<Assignment> witness;
  WorkCounters counters;
};

/// Split-and-list feasibility: a dominating pair between the two half-lists
/// is exactly a feasible assignment.
IlpResult solve_ilp(const IneqSystem& sys, const SplitListOptions& options = {});

bool verify(const IneqSystem& sys, const Assignment& a);

}  // namespace tcsat
