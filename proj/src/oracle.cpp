#include "tcsat/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "tcsat/error.hpp"

namespace tcsat::oracle {

namespace {

// Lexicographic odometer: position 0 is the most significant digit.
bool next_lex(std::vector<std::uint8_t>& v, int arity) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] + 1 < arity) {
      ++v[i];
      return true;
    }
    v[i] = 0;
  }
  return false;
}

template <class Pred>
std::optional<Assignment> first_lex(int n, int arity, Pred&& pred) {
  if (n > 26) throw ResourceError("oracle enumeration refuses more than 26 variables");
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n), 0);
  do {
    if (pred(v)) return Assignment(v, arity);
  } while (next_lex(v, arity));
  return std::nullopt;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::int64_t nonzero(std::int64_t bound) {
    const std::int64_t w = uniform(1, bound);
    return coin(0.5) ? w : -w;
  }
  std::vector<int> distinct_vars(int n, int count) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < count; ++i)
      std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(uniform(i, n - 1))]);
    all.resize(static_cast<std::size_t>(count));
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 rng_;
};

void check_spec(const GenSpec& spec) {
  if (spec.n < 1) throw InputError("generator needs n >= 1");
  if (spec.c < 1) throw InputError("generator needs c >= 1");
  if (spec.weight_bound < 1) throw InputError("generator needs weight_bound >= 1");
}

// Fan-in (or weighted fan-in) list summing to exactly c * n.
std::vector<std::int64_t> fan_in_plan(const GenSpec& spec, std::int64_t max_fan_in, Gen& gen) {
  const std::int64_t budget = static_cast<std::int64_t>(spec.c) * spec.n;
  std::vector<std::int64_t> plan;
  switch (spec.distribution) {
    case FaninDist::kUniform: {
      std::int64_t remaining = budget;
      while (remaining > 0) {
        const std::int64_t hi = std::min({remaining, max_fan_in, static_cast<std::int64_t>(2 * spec.c + 1)});
        plan.push_back(gen.uniform(1, hi));
        remaining -= plan.back();
      }
      break;
    }
    case FaninDist::kFixed: {
      const std::int64_t f = spec.fixed_fanin;
      if (f < 1 || f > max_fan_in) throw InputError("fixed fan-in out of range");
      if (budget % f != 0) throw InputError("c * n is not a multiple of the fixed fan-in");
      plan.assign(static_cast<std::size_t>(budget / f), f);
      break;
    }
    case FaninDist::kAdversarialPow2: {
      for (int j = 1; j <= spec.c; ++j) {
        const std::int64_t f = std::int64_t{1} << j;
        if (f > max_fan_in) throw InputError("adversarial fan-in 2^" + std::to_string(j) + " too large");
        if (spec.n % f != 0) throw InputError("n must be a multiple of 2^c for the adversarial distribution");
        plan.insert(plan.end(), static_cast<std::size_t>(spec.n / f), f);
      }
      break;
    }
  }
  return plan;
}

std::pair<std::int64_t, std::int64_t> range_of(const std::vector<WeightedInput>& terms) {
  std::int64_t lo = 0, hi = 0;
  for (const auto& t : terms) (t.weight < 0 ? lo : hi) += t.weight;
  return {lo, hi};
}

Predicate random_predicate(Gen& gen, std::int64_t lo, std::int64_t hi, bool lean_high) {
  switch (gen.uniform(0, 3)) {
    case 0:
      return pred::AtLeast{gen.uniform(lean_high ? (lo + hi) / 2 : lo, hi + 1)};
    case 1:
      return pred::Exactly{gen.uniform(lo, hi)};
    case 2: {
      const std::int64_t m = gen.uniform(2, 3);
      return pred::Modulo{m, gen.uniform(0, m - 1)};
    }
    default: {
      pred::OneOf s;
      for (std::int64_t v = lo; v <= hi; ++v)
        if (gen.coin(0.4)) s.values.insert(v);
      if (s.values.empty()) s.values.insert(gen.uniform(lo, hi));
      return s;
    }
  }
}

}  // namespace

std::optional<Assignment> brute_circuit_sat(const ThresholdCircuit& circuit) {
  circuit.validate();
  return first_lex(circuit.n_vars, 2, [&](const std::vector<std::uint8_t>& v) {
    return evaluate(circuit, std::span<const std::uint8_t>(v));
  });
}

std::optional<Assignment> brute_symmetric_sat(const SymmetricCircuit& circuit) {
  circuit.validate();
  // Gate values straight from the definition.
  return first_lex(circuit.n_vars, 2, [&](const std::vector<std::uint8_t>& v) {
    auto value = [&](const std::vector<WeightedInput>& terms) {
      std::int64_t s = 0;
      for (const auto& t : terms) s += t.weight * v[static_cast<std::size_t>(t.var)];
      return s;
    };
    std::int64_t top = value(circuit.top.direct);
    for (const auto& gi : circuit.top.gates) {
      const auto& g = circuit.bottom[static_cast<std::size_t>(gi.gate)];
      if (accepts(g.predicate, value(g.inputs))) top += gi.weight;
    }
    return accepts(circuit.top.predicate, top);
  });
}

std::optional<Assignment> brute_ilp(const IneqSystem& sys) {
  sys.validate();
  return first_lex(sys.n_vars, sys.arity, [&](const std::vector<std::uint8_t>& v) {
    return verify(sys, Assignment(v, sys.arity));
  });
}

std::optional<Assignment> brute_eq_system(const EqSystem& sys) {
  return first_lex(sys.n_vars, 2, [&](const std::vector<std::uint8_t>& v) {
    for (const auto& row : sys.rows) {
      std::int64_t s = 0;
      for (const auto& t : row.terms) s += t.weight * v[static_cast<std::size_t>(t.var)];
      if (s != row.rhs) return false;
    }
    return true;
  });
}

std::optional<DominatingPair> brute_domination(const DominationInstance& inst) {
  const std::size_t d = inst.dim();
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    for (std::size_t j = 0; j < inst.b.size(); ++j) {
      bool ok = true;
      for (std::size_t k = 0; k < d && ok; ++k) {
        const auto u = inst.a.coord(i, k), v = inst.b.coord(j, k);
        ok = inst.strict[k] ? u > v : u >= v;
      }
      if (ok) return DominatingPair{inst.a.tag(i), inst.b.tag(j), i, j};
    }
  return std::nullopt;
}

ThresholdCircuit generate_circuit(const GenSpec& spec) {
  check_spec(spec);
  Gen gen(spec.seed);
  const std::int64_t wb = spec.weight_bound;
  ThresholdCircuit c;
  c.n_vars = spec.n;
  for (auto f : fan_in_plan(spec, spec.n, gen)) {
    ThresholdGate g;
    for (int v : gen.distinct_vars(spec.n, static_cast<int>(f))) g.inputs.push_back({v, gen.nonzero(wb)});
    const auto [lo, hi] = range_of(g.inputs);
    g.threshold = gen.uniform(lo, hi + 1);
    c.bottom.push_back(std::move(g));
    c.top_gate_weights.push_back(gen.nonzero(wb));
  }
  for (int v = 0; v < spec.n; ++v)
    if (gen.coin(0.25)) c.direct_wires.push_back({v, gen.nonzero(wb)});

  std::int64_t lo = 0, hi = 0;
  for (auto w : c.top_gate_weights) (w < 0 ? lo : hi) += w;
  for (const auto& t : c.direct_wires) (t.weight < 0 ? lo : hi) += t.weight;
  c.top_threshold = gen.uniform((lo + hi) / 2, hi + 1);
  c.validate();
  return c;
}

SymmetricCircuit generate_symmetric(const GenSpec& spec) {
  check_spec(spec);
  Gen gen(spec.seed);
  const std::int64_t wb = spec.weight_bound;
  SymmetricCircuit c;
  c.n_vars = spec.n;
  c.declared_c = spec.c;
  for (auto f : fan_in_plan(spec, static_cast<std::int64_t>(spec.n) * wb, gen)) {
    // Split weighted fan-in f into l parts of size 1..wb on distinct variables.
    const std::int64_t min_l = (f + wb - 1) / wb;
    const auto l = gen.uniform(min_l, std::min<std::int64_t>(f, spec.n));
    std::vector<std::int64_t> parts(static_cast<std::size_t>(l), 1);
    for (std::int64_t extra = f - l; extra > 0;) {
      auto& p = parts[static_cast<std::size_t>(gen.uniform(0, l - 1))];
      if (p < wb) {
        ++p;
        --extra;
      }
    }
    SymmetricGate g;
    const auto vars = gen.distinct_vars(spec.n, static_cast<int>(l));
    for (std::size_t i = 0; i < vars.size(); ++i)
      g.inputs.push_back({vars[i], gen.coin(0.5) ? parts[i] : -parts[i]});
    const auto [lo, hi] = range_of(g.inputs);
    g.predicate = random_predicate(gen, lo, hi, false);
    c.bottom.push_back(std::move(g));
  }
  for (std::size_t g = 0; g < c.bottom.size(); ++g)
    c.top.gates.push_back({static_cast<int>(g), gen.nonzero(std::min<std::int64_t>(wb, 3))});
  for (int v = 0; v < spec.n; ++v)
    if (gen.coin(0.25)) c.top.direct.push_back({v, gen.nonzero(wb)});

  std::int64_t lo = 0, hi = 0;
  for (const auto& gi : c.top.gates) (gi.weight < 0 ? lo : hi) += gi.weight;
  for (const auto& t : c.top.direct) (t.weight < 0 ? lo : hi) += t.weight;
  c.top.predicate = random_predicate(gen, lo, hi, true);
  c.validate();
  return c;
}

IneqSystem generate_ilp(const GenSpec& spec) {
  check_spec(spec);
  if (spec.arity < 2) throw InputError("arity must be at least 2");
  Gen gen(spec.seed);
  IneqSystem sys;
  sys.n_vars = spec.n;
  sys.arity = spec.arity;
  for (int j = 0; j < spec.rows; ++j) {
    LinearRow row;
    std::int64_t base = 0;
    for (int v = 0; v < spec.n; ++v)
      if (gen.coin(0.6)) {
        row.terms.push_back({v, gen.nonzero(spec.weight_bound)});
        base += row.terms.back().weight * gen.uniform(0, spec.arity - 1);
      }
    row.rel = static_cast<Relation>(gen.uniform(0, 4));
    row.rhs = base + gen.uniform(-spec.weight_bound, spec.weight_bound);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

EqSystem generate_eq_system(const GenSpec& spec) {
  check_spec(spec);
  Gen gen(spec.seed);
  EqSystem sys;
  sys.n_vars = spec.n;
  std::vector<int> planted(static_cast<std::size_t>(spec.n));
  for (auto& x : planted) x = static_cast<int>(gen.uniform(0, 1));
  const bool use_planted = gen.coin(0.5);
  for (int j = 0; j < spec.rows; ++j) {
    EqRow row;
    std::int64_t value = 0, mass = 0;
    for (int v = 0; v < spec.n; ++v)
      if (gen.coin(0.6)) {
        const auto w = gen.nonzero(spec.weight_bound);
        row.terms.push_back({v, w});
        value += w * planted[static_cast<std::size_t>(v)];
        mass += w < 0 ? -w : w;
      }
    row.rhs = use_planted ? value : gen.uniform(-mass, mass);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

DominationInstance generate_vectors(const GenSpec& spec) {
  if (spec.n < 0 || spec.rows < 1) throw InputError("vector generator needs n >= 0 and dim >= 1");
  Gen gen(spec.seed);
  const auto d = static_cast<std::size_t>(spec.rows);
  DominationInstance inst(d);
  std::vector<std::int64_t> v(d);
  for (int i = 0; i < spec.n; ++i) {
    for (auto& x : v) x = gen.uniform(-spec.weight_bound, spec.weight_bound);
    (i < spec.n / 2 ? inst.a : inst.b).push(v, static_cast<std::uint64_t>(i));
  }
  return inst;
}

Instance generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::kThresholdCircuit: return generate_circuit(spec);
    case GenKind::kSymmetricCircuit: return generate_symmetric(spec);
    case GenKind::kIlp: return generate_ilp(spec);
    case GenKind::kEqSystem: return generate_eq_system(spec);
    case GenKind::kVectors: return generate_vectors(spec);
  }
  throw InputError("unknown generator kind");
}

}  // namespace tcsat::oracle
