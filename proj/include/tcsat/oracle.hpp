#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "tcsat/model.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"
#include "tcsat/vecdom.hpp"

namespace tcsat::oracle {

// Definitional reference solvers. Each returns the lexicographically
// smallest witness (variable 0 is the most significant position).

std::optional<Assignment> brute_circuit_sat(const ThresholdCircuit& circuit);
std::optional<Assignment> brute_symmetric_sat(const SymmetricCircuit& circuit);
std::optional<Assignment> brute_ilp(const IneqSystem& sys);
std::optional<Assignment> brute_eq_system(const EqSystem& sys);

/// First (i, j) in row-major order with A[i] dominating B[j].
std::optional<DominatingPair> brute_domination(const DominationInstance& inst);

enum class GenKind { kThresholdCircuit, kSymmetricCircuit, kIlp, kEqSystem, kVectors };
enum class FaninDist { kUniform, kAdversarialPow2, kFixed };

struct GenSpec {
  GenKind kind = GenKind::kThresholdCircuit;
  int n = 10;            // variables, or total vector count for kVectors
  int c = 2;             // wire budget c * n
  int rows = 3;          // ILP / equation rows, vector dimension
  int weight_bound = 10;
  int arity = 2;
  std::uint64_t seed = 1;
  FaninDist distribution = FaninDist::kUniform;
  int fixed_fanin = 3;
};

using Instance =
    std::variant<ThresholdCircuit, SymmetricCircuit, IneqSystem, EqSystem, DominationInstance>;

/// Seed-deterministic generator; circuit wire budgets are met exactly.
Instance generate(const GenSpec& spec);

ThresholdCircuit generate_circuit(const GenSpec& spec);
SymmetricCircuit generate_symmetric(const GenSpec& spec);
IneqSystem generate_ilp(const GenSpec& spec);
EqSystem generate_eq_system(const GenSpec& spec);
DominationInstance generate_vectors(const GenSpec& spec);

}  // namespace tcsat::oracle
