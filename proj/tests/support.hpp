#pragma once

// Hand-rolled generators and definitional helpers shared by the unit tests.
// Nothing here uses tcsat::oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "tcsat/model.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"

namespace testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  std::int64_t nonzero(std::int64_t bound) {
    std::int64_t w = 0;
    while (w == 0) w = uniform(-bound, bound);
    return w;
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  std::vector<int> distinct(int n, int k) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), gen_);
    all.resize(static_cast<std::size_t>(k));
    std::sort(all.begin(), all.end());
    return all;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline tcsat::ThresholdCircuit random_circuit(Rng& rng, int n, int max_gates, int max_fanin,
                                              std::int64_t wb) {
  tcsat::ThresholdCircuit c;
  c.n_vars = n;
  const int m = static_cast<int>(rng.uniform(0, max_gates));
  std::int64_t top_mass = 0;
  for (int g = 0; g < m; ++g) {
    tcsat::ThresholdGate gate;
    const int f = static_cast<int>(rng.uniform(1, std::min(n, max_fanin)));
    std::int64_t mass = 0;
    for (int v : rng.distinct(n, f)) {
      const auto w = rng.nonzero(wb);
      gate.inputs.push_back({v, w});
      mass += std::abs(w);
    }
    gate.threshold = rng.uniform(-mass / 2, mass / 2 + 1);
    c.bottom.push_back(gate);
    const auto tw = rng.uniform(-wb, wb);
    c.top_gate_weights.push_back(tw);
    top_mass += std::abs(tw);
  }
  for (int v : rng.distinct(n, static_cast<int>(rng.uniform(0, std::min(n, 3))))) {
    const auto w = rng.nonzero(wb);
    c.direct_wires.push_back({v, w});
    top_mass += std::abs(w);
  }
  c.top_threshold = rng.uniform(-top_mass / 2, top_mass / 2 + 1);
  return c;
}

/// Reads the definition literally: gate outputs first, then the top sum.
inline bool reference_eval(const tcsat::ThresholdCircuit& c, const std::vector<std::uint8_t>& x) {
  long double top = 0;
  for (std::size_t g = 0; g < c.bottom.size(); ++g) {
    long double s = 0;
    for (const auto& in : c.bottom[g].inputs) s += static_cast<long double>(in.weight) * x[in.var];
    if (s >= static_cast<long double>(c.bottom[g].threshold))
      top += static_cast<long double>(c.top_gate_weights[g]);
  }
  for (const auto& in : c.direct_wires) top += static_cast<long double>(in.weight) * x[in.var];
  return top >= static_cast<long double>(c.top_threshold);
}

inline std::vector<std::uint8_t> bits(std::uint64_t mask, int n) {
  std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
  return x;
}

inline bool any_satisfying(const tcsat::ThresholdCircuit& c) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.n_vars); ++m)
    if (reference_eval(c, bits(m, c.n_vars))) return true;
  return false;
}

inline tcsat::Restriction random_restriction(Rng& rng, int n, double free_prob) {
  tcsat::Restriction r(n);
  for (int v = 0; v < n; ++v)
    if (!rng.coin(free_prob)) r.assign(v, static_cast<int>(rng.uniform(0, 1)));
  return r;
}

inline tcsat::IneqSystem random_ilp(Rng& rng, int n, int rows, int arity, std::int64_t wb) {
  tcsat::IneqSystem sys;
  sys.n_vars = n;
  sys.arity = arity;
  for (int j = 0; j < rows; ++j) {
    tcsat::LinearRow row;
    const int k = static_cast<int>(rng.uniform(1, n));
    std::int64_t mass = 0;
    for (int v : rng.distinct(n, k)) {
      const auto w = rng.nonzero(wb);
      row.terms.push_back({v, w});
      mass += std::abs(w) * (arity - 1);
    }
    row.rel = static_cast<tcsat::Relation>(rng.uniform(0, 4));
    row.rhs = row.rel == tcsat::Relation::kEq ? rng.uniform(-mass / 3, mass / 3)
                                              : rng.uniform(-mass / 2, mass / 2);
    sys.rows.push_back(row);
  }
  return sys;
}

inline bool reference_ilp_row(const tcsat::LinearRow& row, const std::vector<std::uint8_t>& x) {
  std::int64_t s = 0;
  for (const auto& t : row.terms) s += t.weight * x[t.var];
  switch (row.rel) {
    case tcsat::Relation::kGe: return s >= row.rhs;
    case tcsat::Relation::kGt: return s > row.rhs;
    case tcsat::Relation::kLe: return s <= row.rhs;
    case tcsat::Relation::kLt: return s < row.rhs;
    case tcsat::Relation::kEq: return s == row.rhs;
  }
  return false;
}

/// Odometer over [0, arity)^n; returns false once every tuple was visited.
inline bool next_tuple(std::vector<std::uint8_t>& x, int arity) {
  for (auto& v : x) {
    if (++v < arity) return true;
    v = 0;
  }
  return false;
}

inline tcsat::Predicate random_predicate(Rng& rng, std::int64_t span) {
  switch (rng.uniform(0, 3)) {
    case 0: return tcsat::pred::AtLeast{rng.uniform(-span, span)};
    case 1: return tcsat::pred::Exactly{rng.uniform(-span, span)};
    case 2: {
      const auto m = rng.uniform(2, 4);
      return tcsat::pred::Modulo{m, rng.uniform(0, m - 1)};
    }
    default: {
      tcsat::pred::OneOf s;
      const auto k = rng.uniform(1, 3);
      for (int i = 0; i < k; ++i) s.values.insert(rng.uniform(-span, span));
      return s;
    }
  }
}

inline tcsat::SymmetricCircuit random_symmetric(Rng& rng, int n, int max_gates, int max_fanin,
                                                std::int64_t wb) {
  tcsat::SymmetricCircuit c;
  c.n_vars = n;
  const int m = static_cast<int>(rng.uniform(0, max_gates));
  std::int64_t top_span = 0;
  for (int g = 0; g < m; ++g) {
    tcsat::SymmetricGate gate;
    const int f = static_cast<int>(rng.uniform(1, std::min(n, max_fanin)));
    std::int64_t span = 0;
    for (int v : rng.distinct(n, f)) {
      const auto w = rng.nonzero(wb);
      gate.inputs.push_back({v, w});
      span += std::abs(w);
    }
    gate.predicate = random_predicate(rng, span);
    c.bottom.push_back(gate);
    const auto tw = rng.nonzero(wb);
    c.top.gates.push_back({g, tw});
    top_span += std::abs(tw);
  }
  for (int v : rng.distinct(n, static_cast<int>(rng.uniform(0, std::min(n, 2))))) {
    const auto w = rng.nonzero(wb);
    c.top.direct.push_back({v, w});
    top_span += std::abs(w);
  }
  c.top.predicate = random_predicate(rng, top_span);
  const auto ww = c.weighted_wires();
  c.declared_c = std::max<std::int64_t>(1, (ww + n - 1) / n);
  return c;
}

/// Definition of a symmetric circuit, spelled out without the library.
inline bool reference_sym_accepts(const tcsat::Predicate& p, std::int64_t v) {
  if (auto* a = std::get_if<tcsat::pred::AtLeast>(&p)) return v >= a->t;
  if (auto* e = std::get_if<tcsat::pred::Exactly>(&p)) return v == e->v;
  if (auto* m = std::get_if<tcsat::pred::Modulo>(&p)) return ((v % m->m) + m->m) % m->m == m->r;
  return std::get<tcsat::pred::OneOf>(p).values.count(v) > 0;
}

inline bool reference_sym_eval(const tcsat::SymmetricCircuit& c, const std::vector<std::uint8_t>& x) {
  std::int64_t top = 0;
  for (const auto& gi : c.top.gates) {
    const auto& gate = c.bottom[static_cast<std::size_t>(gi.gate)];
    std::int64_t s = 0;
    for (const auto& in : gate.inputs) s += in.weight * x[in.var];
    if (reference_sym_accepts(gate.predicate, s)) top += gi.weight;
  }
  for (const auto& in : c.top.direct) top += in.weight * x[in.var];
  return reference_sym_accepts(c.top.predicate, top);
}

}  // namespace testing
