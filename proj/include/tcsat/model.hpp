#pragma once

#include <cstdint>
#include <span>
#include <initializer_list>
#include <vector>

namespace tcsat {

struct WeightedInput {
  int var = 0;
  std::int64_t weight = 0;

  friend bool operator==(const WeightedInput&, const WeightedInput&) = default;
};

/// Outputs 1 iff sum(weight * x[var]) >= threshold. Weights are nonzero and
/// variables distinct; fan-in is the number of inputs.
struct ThresholdGate {
  std::vector<WeightedInput> inputs;
  std::int64_t threshold = 0;

  std::size_t fan_in() const { return inputs.size(); }

  friend bool operator==(const ThresholdGate&, const ThresholdGate&) = default;
};

/// Depth-two threshold circuit. The top gate sees every bottom gate output
/// (weighted by top_gate_weights) plus optional direct wires from variables.
/// Only bottom-gate inputs count as wires.
struct ThresholdCircuit {
  int n_vars = 0;
  std::vector<ThresholdGate> bottom;
  std::vector<std::int64_t> top_gate_weights;
  std::vector<WeightedInput> direct_wires;
  std::int64_t top_threshold = 0;

  std::size_t wires() const;

  /// Throws InputError if any structural invariant is violated.
  void validate() const;

  friend bool operator==(const ThresholdCircuit&, const ThresholdCircuit&) = default;
};

/// Values in [0, arity); Boolean when arity == 2.
struct Assignment {
  int arity = 2;
  std::vector<std::uint8_t> values;

  Assignment() = default;
  explicit Assignment(std::size_t n, int arity_ = 2) : arity(arity_), values(n, 0) {}
  explicit Assignment(std::vector<std::uint8_t> v, int arity_ = 2) : arity(arity_), values(std::move(v)) {}
  Assignment(std::initializer_list<std::uint8_t> v, int arity_ = 2) : arity(arity_), values(v) {}

  std::size_t size() const { return values.size(); }
  std::uint8_t operator[](std::size_t i) const { return values[i]; }
  std::uint8_t& operator[](std::size_t i) { return values[i]; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Partial assignment: every variable is either assigned a value or free.
class Restriction {
 public:
  Restriction() = default;
  /// All variables start free.
  explicit Restriction(int n_vars) : values_(static_cast<std::size_t>(n_vars), kFree) {}

  int n_vars() const { return static_cast<int>(values_.size()); }
  bool is_free(int var) const { return values_.at(static_cast<std::size_t>(var)) == kFree; }
  int value(int var) const { return values_.at(static_cast<std::size_t>(var)); }

  void assign(int var, int value);
  void set_free(int var) { values_.at(static_cast<std::size_t>(var)) = kFree; }

  /// Free variables in ascending order; position i is the residual index of
  /// free_vars()[i] after simplify.
  std::vector<int> free_vars() const;
  std::vector<int> assigned_vars() const;
  std::size_t free_count() const;

 private:
  static constexpr std::int8_t kFree = -1;
  std::vector<std::int8_t> values_;
};

/// Full assignment from a restriction and values for its free variables
/// (ordered as free_vars()).
Assignment combine(const Restriction& r, std::span<const std::uint8_t> free_values);

bool evaluate(const ThresholdCircuit& circuit, std::span<const std::uint8_t> a);
bool evaluate(const ThresholdCircuit& circuit, const Assignment& a);

/// Residual circuit over the free variables of r, re-indexed in ascending
/// order. Satisfiability semantics are preserved for every extension of r.
ThresholdCircuit simplify(const ThresholdCircuit& circuit, const Restriction& r);

struct WireStats {
  std::vector<std::size_t> fan_ins;  // sorted ascending
  std::size_t wires = 0;
};

WireStats wire_stats(const ThresholdCircuit& circuit);

/// Stable 64-bit fingerprint of the instance, used to derive default seeds.
std::uint64_t fingerprint(const ThresholdCircuit& circuit);

}  // namespace tcsat
