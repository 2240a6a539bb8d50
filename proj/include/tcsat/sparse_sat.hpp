#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcsat/counters.hpp"
#include "tcsat/model.hpp"
#include "tcsat/splitlist.hpp"

namespace tcsat {

using Rational = boost::multiprecision::cpp_rational;

/// Parameters of the random restriction. derive() fills them from the wire
/// count so that epsilon = delta^2/c, a = c^2/delta^2, p = delta/(c*k), with
/// k chosen by fanin_separation.
struct RestrictionParams {
  Rational c;
  Rational delta{1, 48};
  Rational epsilon;
  Rational a;
  Rational k{1};
  int k_exponent = 0;  // k == a^k_exponent
  Rational p;

  /// c is wires/n, clamped below at 1.
  static RestrictionParams derive(const WireStats& stats, int n_vars,
                                  const Rational& delta = Rational(1, 48));
};

struct FaninScale {
  Rational k;
  int exponent = 0;  // k == a^exponent
  Rational bucket_mass;
};

/// Smallest k in {1, a, a^2, ...} whose bucket (k, k*a] carries at most
/// epsilon*n wires.
FaninScale fanin_separation(const std::vector<std::size_t>& fan_ins, int n_vars, const Rational& a,
                            const Rational& epsilon);

/// Sum of fan-ins f with k < f <= k*a.
Rational bucket_mass(const std::vector<std::size_t>& fan_ins, const Rational& k, const Rational& a);

struct SampledRestriction {
  Restriction restriction;  // free set; assigned values are placeholders
  std::size_t exceptional = 0;  // bottom gates with >= 2 free inputs
  int attempts = 0;
  bool accepted = false;
};

/// Number of bottom gates with at least two free inputs under r.
std::size_t count_exceptional(const ThresholdCircuit& circuit, const Restriction& r);

/// Each variable is free independently with probability p. Resamples up to
/// `resamples` times until exceptional <= 2 * 3 * delta * p * n; otherwise
/// the sample with fewest exceptional gates (then most free variables) wins.
SampledRestriction sample_restriction(const ThresholdCircuit& circuit, double p,
                                      const Rational& delta, std::uint64_t seed,
                                      int resamples = 10);

/// Row system for one guess of which bottom gates are satisfied (bit g of
/// `satisfied`): satisfied gates reach their threshold, the others stay
/// below it, and the direct wires make up the rest of the top threshold.
IneqSystem build_guess_system(const ThresholdCircuit& circuit, std::uint64_t satisfied);

struct SatResult {
  std::optional<Assignment> witness;
  WorkCounters counters;
};

struct FewGatesOptions {
  std::size_t max_gates = 60;
  SplitListOptions splitlist;
};

/// Gate-subset guessing over 2^m guesses, each decided by split-and-list.
SatResult sat_few_gates(const ThresholdCircuit& circuit, const FewGatesOptions& options = {});

/// Plain 2^n enumeration; used for the small-instance path and for residual
/// circuits that exceed the gate budget.
SatResult exhaustive_sat(const ThresholdCircuit& circuit);

enum class SolvePath { kExhaustive, kRestriction };

struct SolveOptions {
  std::optional<std::uint64_t> seed;  // default: fingerprint of the circuit
  bool force_restriction = false;
  int fast_path_max_n = 20;
  int max_assigned = 30;
  int threads = 1;
  int resamples = 10;
  Rational delta{1, 48};
  /// Replaces the derived p.
  std::optional<double> p_override;
  FewGatesOptions few_gates;
};

struct SolveResult {
  std::optional<Assignment> witness;
  WorkCounters counters;
  SolvePath path = SolvePath::kExhaustive;
  RestrictionParams params;
  double p_used = 0.0;
  std::size_t free_count = 0;
  std::size_t exceptional = 0;
  std::uint64_t residual_fallbacks = 0;
};

/// Random restriction, enumeration of the assigned variables, and few-gates
/// SAT on every residual circuit.
SolveResult solve(const ThresholdCircuit& circuit, const SolveOptions& options = {});

}  // namespace tcsat
