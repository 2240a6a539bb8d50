#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcsat/counters.hpp"
#include "tcsat/model.hpp"

namespace tcsat {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Symmetric gates

namespace pred {
struct AtLeast { std::int64_t t; friend bool operator==(const AtLeast&, const AtLeast&) = default; };
struct Exactly { std::int64_t v; friend bool operator==(const Exactly&, const Exactly&) = default; };
/// value mod m == r, with a non-negative remainder.
struct Modulo {
  std::int64_t m;
  std::int64_t r;
  friend bool operator==(const Modulo&, const Modulo&) = default;
};
struct OneOf { std::set<std::int64_t> values; friend bool operator==(const OneOf&, const OneOf&) = default; };
}  // namespace pred

/// Maps a gate value (integer weighted sum) to the gate output.
using Predicate = std::variant<pred::AtLeast, pred::Exactly, pred::Modulo, pred::OneOf>;

bool accepts(const Predicate& p, std::int64_t value);

struct SymmetricGate {
  std::vector<WeightedInput> inputs;
  Predicate predicate = pred::AtLeast{0};

  /// Sum of absolute weights.
  std::int64_t weighted_fan_in() const;

  friend bool operator==(const SymmetricGate&, const SymmetricGate&) = default;
};

struct GateInput {
  int gate = 0;
  std::int64_t weight = 0;
  friend bool operator==(const GateInput&, const GateInput&) = default;
};

struct SymmetricTop {
  std::vector<GateInput> gates;
  std::vector<WeightedInput> direct;
  Predicate predicate = pred::AtLeast{0};

  friend bool operator==(const SymmetricTop&, const SymmetricTop&) = default;
};

struct SymmetricCircuit {
  int n_vars = 0;
  std::int64_t declared_c = 1;  // weighted wires <= declared_c * n_vars
  std::vector<SymmetricGate> bottom;
  SymmetricTop top;

  std::int64_t weighted_wires() const;
  void validate() const;

  friend bool operator==(const SymmetricCircuit&, const SymmetricCircuit&) = default;
};

bool evaluate(const SymmetricCircuit& circuit, std::span<const std::uint8_t> a);
bool evaluate(const SymmetricCircuit& circuit, const Assignment& a);

// ---------------------------------------------------------------------------
// Boolean linear equations

struct EqRow {
  std::vector<WeightedInput> terms;
  std::int64_t rhs = 0;
};

struct EqSystem {
  int n_vars = 0;
  std::vector<EqRow> rows;
};

bool verify(const EqSystem& sys, const Assignment& a);

/// Digit base for the subset-sum encoding: 2 * n * max|w| + 1 (at least 2).
std::int64_t encoding_base(const EqSystem& sys);

/// sum_j value_j * base^j.
boost::multiprecision::cpp_int encode_profile(std::span<const std::int64_t> values, std::int64_t base);

/// Inverse of encode_profile for digits in (-base/2, base/2).
std::vector<std::int64_t> decode_profile(boost::multiprecision::cpp_int code, std::int64_t base,
                                         std::size_t digits);

struct EqResult {
  std::optional<Assignment> witness;
  WorkCounters counters;
};

/// Meet-in-the-middle subset sum over the encoded per-variable profiles.
EqResult solve_boolean_linear_system(const EqSystem& sys);

// ---------------------------------------------------------------------------
// Savings and the choice of p

/// rational_part - sum(coeff * log2(arg)); exact when every arg is a power of two.
struct SavingsValue {
  Rational rational_part;
  std::vector<std::pair<Rational, Rational>> log_terms;  // (coeff, arg)

  double approx() const;
  bool is_exact() const;  // no irrational log terms
  /// Collapses power-of-two log terms into rational_part.
  SavingsValue reduced() const;

  SavingsValue& operator+=(const SavingsValue& o);
  SavingsValue scaled(const Rational& factor) const;
};

/// Three-way comparison: exact for power-of-two logs, long double otherwise.
int compare(const SavingsValue& x, const SavingsValue& y);

/// p/4 if p*f < 1/(4c), otherwise p/2 - (c/f) * log2(8*c*p*f).
SavingsValue savings(const Rational& p, std::int64_t f, const Rational& c);

/// f -> c_f, wires of weighted-fan-in-f gates per variable.
using WireDistribution = std::map<std::int64_t, Rational>;

WireDistribution wire_distribution(const SymmetricCircuit& circuit);

/// c_{2^j} = 1 for j = 1..c.
WireDistribution adversarial_distribution(int c);

/// sum_f (c_f / c) * savings(p, f, c).
SavingsValue expected_savings(const Rational& p, const WireDistribution& dist, const Rational& c);

/// Mixed strategy over p = 2^-i, i = 1..I, with mass A * 2^-(I-i+1).
struct PDistribution {
  int levels = 1;  // I
  Rational normalization;  // A
  std::vector<Rational> support;  // support[i-1] = 2^-i
  std::vector<Rational> masses;

  static PDistribution make(int levels);
};

constexpr double kDefaultKappa = 54.0;

/// I = ceil(kappa * c^2 * log2(max(c, 2))).
int grid_levels(const Rational& c, double kappa = kDefaultKappa);

/// Expected savings against `dist` when p is drawn from the mixed strategy.
SavingsValue mixed_savings(const PDistribution& d, const WireDistribution& dist, const Rational& c);

/// argmax over p = 2^-i, i = 1..I, of expected_savings; ties go to larger p.
Rational choose_p(const WireDistribution& dist, const Rational& c, double kappa = kDefaultKappa);

// ---------------------------------------------------------------------------
// Residual circuits and the value-guess reduction

/// A bottom gate that still has >= 2 free inputs after a restriction.
struct ExceptionalGate {
  std::vector<WeightedInput> terms;  // over residual indices
  std::int64_t offset = 0;           // contribution of assigned inputs
  Predicate predicate;
  std::int64_t top_weight = 0;       // total weight on the top gate
};

/// Circuit after folding assigned inputs; single-free-input gates become
/// affine terms g(0) + (g(1) - g(0)) * x of the top gate.
struct SymmetricResidual {
  int n_free = 0;
  std::vector<ExceptionalGate> gates;
  std::vector<std::int64_t> top_linear;  // per residual variable
  std::int64_t top_constant = 0;
  Predicate top_predicate;
};

SymmetricResidual reduce(const SymmetricCircuit& circuit, const Restriction& r);

/// Possible residual values of sum(terms): distinct subset sums when
/// 2^l <= W'+1, otherwise the full range [neg, pos].
std::vector<std::int64_t> candidate_values(const std::vector<WeightedInput>& terms);

/// min(2^l, 2W'+1) for a gate with l free inputs and residual weighted fan-in W'.
std::uint64_t value_count_bound(const std::vector<WeightedInput>& terms);

/// Calls `visit` with each EqSystem from a value tuple whose implied gate
/// outputs pass the top predicate; stops when visit returns true. Returns
/// the number of tuples enumerated (gate tuples times top values).
std::uint64_t for_each_value_system(const SymmetricResidual& residual,
                                    const std::function<bool(const EqSystem&)>& visit,
                                    std::uint64_t max_tuples = std::uint64_t{1} << 24);

struct SymSolveOptions {
  std::optional<std::uint64_t> seed;
  bool force_restriction = false;
  int fast_path_max_n = 20;
  int max_assigned = 30;
  int threads = 1;
  double kappa = kDefaultKappa;
  std::optional<double> p_override;
  std::uint64_t max_tuples = std::uint64_t{1} << 24;
};

enum class SymPath { kExhaustive, kRestriction, kNonPositiveSavings };

struct SymSolveResult {
  std::optional<Assignment> witness;
  WorkCounters counters;
  SymPath path = SymPath::kExhaustive;
  double p_used = 0.0;
  std::size_t free_count = 0;
};

SymSolveResult solve_symmetric(const SymmetricCircuit& circuit, const SymSolveOptions& options = {});

std::uint64_t fingerprint(const SymmetricCircuit& circuit);

}  // namespace tcsat
