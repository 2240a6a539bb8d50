#include "tcsat/sparse_sat.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "tcsat/checked.hpp"
#include "tcsat/error.hpp"

namespace tcsat {

Rational bucket_mass(const std::vector<std::size_t>& fan_ins, const Rational& k, const Rational& a) {
  const Rational hi = k * a;
  Rational mass = 0;
  for (auto f : fan_ins) {
    const Rational rf(f);
    if (rf > k && rf <= hi) mass += rf;
  }
  return mass;
}

FaninScale fanin_separation(const std::vector<std::size_t>& fan_ins, int n_vars, const Rational& a,
                            const Rational& epsilon) {
  if (a <= 1) throw InputError("fan-in separation needs a > 1");
  if (epsilon <= 0) throw InputError("fan-in separation needs epsilon > 0");
  const Rational budget = epsilon * n_vars;
  const std::size_t max_fan_in = fan_ins.empty() ? 0 : *std::max_element(fan_ins.begin(), fan_ins.end());

  FaninScale scale{Rational(1), 0, 0};
  for (;;) {
    scale.bucket_mass = bucket_mass(fan_ins, scale.k, a);
    if (scale.bucket_mass <= budget) return scale;
    // Unreachable once k passes the largest fan-in: the bucket is then empty.
    if (scale.k >= max_fan_in) throw std::logic_error("fan-in separation failed to terminate");
    scale.k *= a;
    ++scale.exponent;
  }
}

RestrictionParams RestrictionParams::derive(const WireStats& stats, int n_vars, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw InputError("delta must be in (0, 1]");
  RestrictionParams p;
  p.delta = delta;
  const std::size_t n = static_cast<std::size_t>(std::max(n_vars, 1));
  p.c = Rational(std::max(stats.wires, n), n);
  p.epsilon = delta * delta / p.c;
  p.a = p.c * p.c / (delta * delta);
  const auto scale = fanin_separation(stats.fan_ins, static_cast<int>(n), p.a, p.epsilon);
  p.k = scale.k;
  p.k_exponent = scale.exponent;
  p.p = delta / (p.c * p.k);
  return p;
}

std::size_t count_exceptional(const ThresholdCircuit& circuit, const Restriction& r) {
  std::size_t count = 0;
  for (const auto& g : circuit.bottom) {
    int free = 0;
    for (const auto& in : g.inputs)
      if (r.is_free(in.var) && ++free >= 2) break;
    if (free >= 2) ++count;
  }
  return count;
}

SampledRestriction sample_restriction(const ThresholdCircuit& circuit, double p,
                                      const Rational& delta, std::uint64_t seed, int resamples) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("free probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution is_free(p);
  const double accept = 2.0 * 3.0 * static_cast<double>(delta) * p * circuit.n_vars;

  SampledRestriction best;
  for (int attempt = 1; attempt <= std::max(resamples, 1); ++attempt) {
    Restriction r(circuit.n_vars);
    for (int v = 0; v < circuit.n_vars; ++v)
      if (!is_free(rng)) r.assign(v, 0);
    const std::size_t exceptional = count_exceptional(circuit, r);
    best.attempts = attempt;
    if (static_cast<double>(exceptional) <= accept) {
      best.restriction = std::move(r);
      best.exceptional = exceptional;
      best.accepted = true;
      break;
    }
    if (attempt == 1 || exceptional < best.exceptional ||
        (exceptional == best.exceptional && r.free_count() > best.restriction.free_count())) {
      best.restriction = std::move(r);
      best.exceptional = exceptional;
    }
  }
  return best;
}

IneqSystem build_guess_system(const ThresholdCircuit& circuit, std::uint64_t satisfied) {
  IneqSystem sys;
  sys.n_vars = circuit.n_vars;
  sys.arity = 2;
  std::int64_t top_rhs = circuit.top_threshold;
  for (std::size_t g = 0; g < circuit.bottom.size(); ++g) {
    const auto& gate = circuit.bottom[g];
    const bool on = (satisfied >> g) & 1U;
    sys.rows.push_back({gate.inputs, on ? Relation::kGe : Relation::kLt, gate.threshold});
    if (on) top_rhs = checked::sub(top_rhs, circuit.top_gate_weights[g]);
  }
  sys.rows.push_back({circuit.direct_wires, Relation::kGe, top_rhs});
  return sys;
}

SatResult sat_few_gates(const ThresholdCircuit& circuit, const FewGatesOptions& options) {
  circuit.validate();
  const std::size_t m = circuit.bottom.size();
  if (m > options.max_gates || m > 62)
    throw ResourceError("few-gates solver refuses " + std::to_string(m) + " bottom gates");

  SatResult result;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    ++result.counters.guesses;
    const auto ilp = solve_ilp(build_guess_system(circuit, mask), options.splitlist);
    result.counters += ilp.counters;
    if (ilp.witness) {
      if (!evaluate(circuit, *ilp.witness))
        throw std::logic_error("few-gates witness does not satisfy the circuit");
      result.witness = ilp.witness;
      return result;
    }
  }
  return result;
}

SatResult exhaustive_sat(const ThresholdCircuit& circuit) {
  circuit.validate();
  if (circuit.n_vars > 40) throw ResourceError("exhaustive search refuses more than 40 variables");
  SatResult result;
  Assignment a(static_cast<std::size_t>(circuit.n_vars));
  for (;;) {
    ++result.counters.assignments;
    if (evaluate(circuit, a)) {
      result.witness = a;
      return result;
    }
    std::size_t i = 0;
    while (i < a.size() && a[i] == 1) a[i++] = 0;
    if (i == a.size()) return result;
    a[i] = 1;
  }
}

namespace {

struct BranchOutcome {
  std::optional<Assignment> witness;
  WorkCounters counters;
  std::uint64_t fallbacks = 0;
};

}  // namespace

SolveResult solve(const ThresholdCircuit& circuit, const SolveOptions& options) {
  circuit.validate();
  SolveResult result;

  if (!options.force_restriction && circuit.n_vars <= options.fast_path_max_n) {
    auto ex = exhaustive_sat(circuit);
    result.witness = std::move(ex.witness);
    result.counters = ex.counters;
    result.path = SolvePath::kExhaustive;
    return result;
  }

  result.path = SolvePath::kRestriction;
  result.params = RestrictionParams::derive(wire_stats(circuit), circuit.n_vars, options.delta);
  result.p_used = options.p_override ? *options.p_override : static_cast<double>(result.params.p);
  const std::uint64_t seed = options.seed ? *options.seed : fingerprint(circuit);

  const auto sampled =
      sample_restriction(circuit, result.p_used, options.delta, seed, options.resamples);
  result.free_count = sampled.restriction.free_count();
  result.exceptional = sampled.exceptional;

  const std::vector<int> assigned = sampled.restriction.assigned_vars();
  if (static_cast<int>(assigned.size()) > options.max_assigned)
    throw ResourceError("assigned set of " + std::to_string(assigned.size()) +
                        " variables exceeds limit " + std::to_string(options.max_assigned));

  const Rational gate_budget = 3 * options.delta * static_cast<long long>(result.free_count);
  const std::uint64_t branches = std::uint64_t{1} << assigned.size();

  std::atomic<bool> found{false};
  std::mutex mu;
  auto run_branch = [&](std::uint64_t idx, BranchOutcome& out) {
    Restriction r = sampled.restriction;
    for (std::size_t j = 0; j < assigned.size(); ++j) r.assign(assigned[j], static_cast<int>((idx >> j) & 1U));
    ++out.counters.assignments;
    ++out.counters.residual_calls;
    const ThresholdCircuit residual = simplify(circuit, r);

    SatResult sub;
    if (Rational(static_cast<long long>(residual.bottom.size())) <= gate_budget) {
      sub = sat_few_gates(residual, options.few_gates);
      out.counters += sub.counters;
    } else {
      sub = exhaustive_sat(residual);
      out.counters.fallback_assignments += sub.counters.assignments;
      ++out.fallbacks;
    }
    if (!sub.witness) return false;

    Assignment full = combine(r, sub.witness->values);
    if (!evaluate(circuit, full)) throw std::logic_error("restriction witness does not satisfy the circuit");
    std::lock_guard lock(mu);
    if (!out.witness) out.witness = std::move(full);
    return true;
  };

  const int threads = std::max(1, options.threads);
  std::vector<BranchOutcome> outcomes(static_cast<std::size_t>(threads));
  if (threads == 1) {
    for (std::uint64_t idx = 0; idx < branches; ++idx)
      if (run_branch(idx, outcomes[0])) break;
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::uint64_t idx = static_cast<std::uint64_t>(t); idx < branches && !found.load();
               idx += static_cast<std::uint64_t>(threads))
            if (run_branch(idx, outcomes[static_cast<std::size_t>(t)])) found = true;
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
          found = true;
        }
      });
    }
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (auto& o : outcomes) {
    result.counters += o.counters;
    result.residual_fallbacks += o.fallbacks;
    if (!result.witness && o.witness) result.witness = std::move(o.witness);
  }
  return result;
}

}  // namespace tcsat
