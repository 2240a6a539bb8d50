#pragma once

#include <cstdint>
#include <ostream>

namespace tcsat {

/// Instrumented operation counts reported by every solver.
struct WorkCounters {
  std::uint64_t assignments = 0;           // outer assignments enumerated
  std::uint64_t vectors = 0;               // half-list vectors / subset sums listed
  std::uint64_t comparisons = 0;           // coordinate or key comparisons
  std::uint64_t guesses = 0;               // gate-subset or value-tuple guesses
  std::uint64_t eq_solves = 0;             // linear-equation systems solved
  std::uint64_t recursion_nodes = 0;       // domination recursion nodes
  std::uint64_t residual_calls = 0;        // residual-circuit solver invocations
  std::uint64_t fallback_assignments = 0;  // exhaustive enumeration on rejected residuals
  std::uint64_t guess_bound = 0;           // sum of per-branch value-guess bounds

  /// Basic operations: the quantity compared against 2^n.
  std::uint64_t total() const {
    return assignments + vectors + comparisons + guesses + eq_solves + fallback_assignments;
  }

  WorkCounters& operator+=(const WorkCounters& o) {
    assignments += o.assignments;
    vectors += o.vectors;
    comparisons += o.comparisons;
    guesses += o.guesses;
    eq_solves += o.eq_solves;
    recursion_nodes += o.recursion_nodes;
    residual_calls += o.residual_calls;
    fallback_assignments += o.fallback_assignments;
    guess_bound += o.guess_bound;
    return *this;
  }
};

inline std::ostream& operator<<(std::ostream& os, const WorkCounters& c) {
  return os << "assignments=" << c.assignments << " vectors=" << c.vectors
            << " comparisons=" << c.comparisons << " guesses=" << c.guesses
            << " eq_solves=" << c.eq_solves << " recursion_nodes=" << c.recursion_nodes
            << " residual_calls=" << c.residual_calls
            << " fallback_assignments=" << c.fallback_assignments << " total=" << c.total();
}

}  // namespace tcsat
