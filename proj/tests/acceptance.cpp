// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "support.hpp"
#include "tcsat/oracle.hpp"
#include "tcsat/sparse_sat.hpp"
#include "tcsat/splitlist.hpp"
#include "tcsat/symsat.hpp"
#include "tcsat/vecdom.hpp"

using namespace tcsat;
using boost::multiprecision::cpp_int;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool brute_threshold(const ThresholdCircuit& c) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.n_vars); ++m)
    if (testing::reference_eval(c, testing::bits(m, c.n_vars))) return true;
  return false;
}

bool brute_symmetric(const SymmetricCircuit& c) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.n_vars); ++m)
    if (testing::reference_sym_eval(c, testing::bits(m, c.n_vars))) return true;
  return false;
}

bool brute_ilp(const IneqSystem& sys) {
  std::vector<std::uint8_t> x(static_cast<std::size_t>(sys.n_vars), 0);
  do {
    bool ok = true;
    for (const auto& row : sys.rows) ok = ok && testing::reference_ilp_row(row, x);
    if (ok) return true;
  } while (testing::next_tuple(x, sys.arity));
  return false;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---------------------------------------------------------------------------

void circuits() {
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(1001);
  int agree = 0, sat = 0, bad_witness = 0, restriction = 0;
  const int total = 500;
  for (int i = 0; i < total; ++i) {
    oracle::GenSpec spec;
    spec.n = static_cast<int>(rng.uniform(8, 16));
    spec.c = static_cast<int>(rng.uniform(1, 3));
    spec.weight_bound = 10;
    spec.seed = 5000 + static_cast<std::uint64_t>(i);
    if (i % 5 == 4 && spec.n % (1 << spec.c) == 0) spec.distribution = oracle::FaninDist::kAdversarialPow2;
    const auto c = oracle::generate_circuit(spec);

    SolveOptions opts;
    opts.force_restriction = true;
    opts.seed = static_cast<std::uint64_t>(i);
    // odd instances: p = 0.4
    if (i % 2) opts.p_override = 0.4;
    const auto r = solve(c, opts);
    restriction += r.path == SolvePath::kRestriction;
    const bool expected = brute_threshold(c);
    agree += r.witness.has_value() == expected;
    sat += expected;
    if (r.witness && !testing::reference_eval(c, r.witness->values)) ++bad_witness;
  }
  const double secs = seconds_since(t0);
  report(1, agree == total && bad_witness == 0 && restriction == total && secs < 600,
         "threshold-circuit solver matches brute force",
         fmt("%d/%d agree, %d SAT, %d bad witnesses, %d restriction runs, %.1f s", agree, total, sat,
             bad_witness, restriction, secs));
}

std::uint64_t identity_runs = 0, identity_breaks = 0;

void check_identity(const IneqSystem& sys, const WorkCounters& counters) {
  ++identity_runs;
  if (counters.vectors != ipow(static_cast<std::uint64_t>(sys.arity), (sys.n_vars + 1) / 2) +
                              ipow(static_cast<std::uint64_t>(sys.arity), sys.n_vars / 2))
    ++identity_breaks;
}

void ilp() {
  testing::Rng rng(1002);
  int agree = 0, sat = 0, bad = 0;
  const int total = 300;
  for (int i = 0; i < total; ++i) {
    const bool ternary = i % 3 == 2;
    const int arity = ternary ? 3 : 2;
    const int n = static_cast<int>(rng.uniform(1, ternary ? 9 : 14));
    const auto sys = testing::random_ilp(rng, n, static_cast<int>(rng.uniform(1, 4)), arity, 10);
    const auto r = solve_ilp(sys);
    check_identity(sys, r.counters);
    const bool expected = brute_ilp(sys);
    agree += r.witness.has_value() == expected;
    sat += expected;
    if (r.witness && !verify(sys, *r.witness)) ++bad;
  }
  report(2, agree == total && bad == 0, "split-and-list ILP matches brute force",
         fmt("%d/%d agree, %d SAT, %d bad witnesses", agree, total, sat, bad));
}

void symmetric() {
  testing::Rng rng(1003);
  int agree = 0, sat = 0, bad = 0, restriction = 0;
  std::set<std::size_t> kinds;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const int n = static_cast<int>(rng.uniform(2, 14));
    SymmetricCircuit c;
    if (i % 2) {
      oracle::GenSpec spec;
      spec.n = n;
      spec.c = static_cast<int>(rng.uniform(1, 2));
      spec.weight_bound = 3;
      spec.seed = 7000 + static_cast<std::uint64_t>(i);
      c = oracle::generate_symmetric(spec);
    } else {
      c = testing::random_symmetric(rng, n, 5, 4, 3);
    }
    for (const auto& g : c.bottom) kinds.insert(g.predicate.index());
    SymSolveOptions opts;
    opts.force_restriction = true;
    opts.seed = static_cast<std::uint64_t>(i);
    if (i % 4 == 1) opts.p_override = 0.5;
    const auto r = solve_symmetric(c, opts);
    restriction += r.path != SymPath::kExhaustive;
    const bool expected = brute_symmetric(c);
    agree += r.witness.has_value() == expected;
    sat += expected;
    if (r.witness && !testing::reference_sym_eval(c, r.witness->values)) ++bad;
  }
  report(3, agree == total && bad == 0 && kinds.size() == 4, "symmetric-circuit solver matches brute force",
         fmt("%d/%d agree, %d SAT, %d bad witnesses, %d non-exhaustive runs, %zu predicate kinds", agree,
             total, sat, bad, restriction, kinds.size()));
}

// Vectors on the hyperplane sum = s; the B copy is lifted by one in coordinate 0,
// so no A vector can dominate any B vector.
DominationInstance antichain(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  DominationInstance inst(d);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  std::vector<std::int64_t> v(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t sum = 0;
    for (std::size_t k = 0; k + 1 < d; ++k) sum += v[k] = coord(gen);
    v[d - 1] = -sum;
    if (i % 2 == 0) {
      inst.a.push(v, i);
    } else {
      v[0] += 1;
      inst.b.push(v, i);
    }
  }
  return inst;
}

void vecdom() {
  std::mt19937_64 gen(1004);
  int cases = 0, within = 0, verdicts = 0, checked = 0;
  double worst = 0;
  for (std::size_t n = 256; n <= 16384; n *= 2)
    for (std::size_t d = 2; d <= 10; ++d)
      for (int variant = 0; variant < 2; ++variant) {
        DominationInstance inst(d);
        if (variant == 0) {
          oracle::GenSpec spec;
          spec.kind = oracle::GenKind::kVectors;
          spec.n = static_cast<int>(n);
          spec.rows = static_cast<int>(d);
          spec.weight_bound = 1000;
          spec.seed = n * 100 + d;
          inst = oracle::generate_vectors(spec);
        } else {
          inst = antichain(gen, n, d);
        }
        const auto r = find_dominating_pair(inst);
        const cpp_int bound = count_bound(n, d);
        ++cases;
        within += cpp_int(r.counters.recursion_nodes) <= 8 * bound;
        worst = std::max(worst, static_cast<double>(r.counters.recursion_nodes) / static_cast<double>(bound));
        if (n <= 2000) {
          ++checked;
          const bool expected = oracle::brute_domination(inst).has_value();
          bool valid = r.pair.has_value() == expected;
          if (r.pair) valid = valid && dominates(inst.a.coords(r.pair->index_a), inst.b.coords(r.pair->index_b), inst.strict);
          verdicts += valid;
        }
      }
  report(4, within == cases && verdicts == checked, "vector-domination recursion stays within 8x the bound",
         fmt("%d/%d within bound, max nodes/bound %.3f, %d/%d verdicts match all-pairs", within, cases, worst,
             verdicts, checked));
}

void counting_identity() {
  testing::Rng rng(1005);
  for (int i = 0; i < 200; ++i) {
    const int arity = static_cast<int>(rng.uniform(2, 4));
    const int n = static_cast<int>(rng.uniform(0, arity == 2 ? 16 : 9));
    const auto sys = testing::random_ilp(rng, std::max(n, 1), static_cast<int>(rng.uniform(1, 5)), arity, 20);
    check_identity(sys, solve_ilp(sys).counters);
  }
  report(5, identity_runs > 0 && identity_breaks == 0, "split-and-list vector count is exact",
         fmt("%llu runs, %llu mismatches", static_cast<unsigned long long>(identity_runs),
             static_cast<unsigned long long>(identity_breaks)));
}

void fanin() {
  testing::Rng rng(1006);
  const Rational delta(1, 48);
  int ok = 0;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    const int c = static_cast<int>(rng.uniform(1, 8));
    const int n = static_cast<int>(rng.uniform(1, 3000));
    const bool derived = i % 2 == 0;
    const Rational eps = derived ? delta * delta / c : Rational(rng.uniform(1, 20), rng.uniform(20, 400));
    const Rational a = derived ? Rational(c * c) / (delta * delta) : Rational(rng.uniform(2, 60));
    std::vector<std::size_t> fan_ins;
    std::int64_t left = static_cast<std::int64_t>(c) * n;
    const bool heavy = rng.coin(0.3);
    while (left > 0 && rng.coin(0.98)) {
      const auto f = rng.uniform(1, std::min<std::int64_t>(left, heavy ? left : 3 + i % 40));
      fan_ins.push_back(static_cast<std::size_t>(f));
      left -= f;
    }
    const auto s = fanin_separation(fan_ins, n, a, eps);
    // bucket mass recomputed here; k <= a^(c/eps) checked through the exponent since k = a^exponent
    Rational mass = 0;
    for (auto f : fan_ins)
      if (Rational(f) > s.k && Rational(f) <= s.k * a) mass += f;
    Rational power = 1;
    for (int e = 0; e < s.exponent; ++e) power *= a;
    ok += mass <= eps * n && power == s.k && Rational(s.exponent) <= Rational(c) / eps;
  }
  report(6, ok == total, "fan-in separation meets the mass bound and the exponent cap",
         fmt("%d/%d multisets", ok, total));
}

struct McOutcome {
  double mean, se, bound, p;
};

McOutcome monte_carlo(const ThresholdCircuit& c, int samples, std::uint64_t seed) {
  const auto params = RestrictionParams::derive(wire_stats(c), c.n_vars);
  const double p = static_cast<double>(params.p);
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution free(p);
  double sum = 0, sq = 0;
  for (int s = 0; s < samples; ++s) {
    Restriction r(c.n_vars);
    for (int v = 0; v < c.n_vars; ++v)
      if (!free(gen)) r.assign(v, 0);
    const auto x = static_cast<double>(count_exceptional(c, r));
    sum += x;
    sq += x * x;
  }
  const double mean = sum / samples;
  const double var = samples > 1 ? (sq - samples * mean * mean) / (samples - 1) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / samples), 3 * static_cast<double>(params.delta) * p * c.n_vars, p};
}

void restriction_stats() {
  std::vector<ThresholdCircuit> instances;
  {
    ThresholdCircuit wide;
    wide.n_vars = 4 * 2305;
    for (int g = 0; g < 4; ++g) {
      ThresholdGate gate;
      for (int i = 0; i < 2305; ++i) gate.inputs.push_back({g * 2305 + i, 1});
      gate.threshold = 1000;
      wide.bottom.push_back(gate);
      wide.top_gate_weights.push_back(1);
    }
    wide.top_threshold = 2;
    instances.push_back(wide);
  }
  oracle::GenSpec spec;
  spec.n = 2048;
  spec.c = 2;
  spec.seed = 1007;
  instances.push_back(oracle::generate_circuit(spec));
  spec.c = 3;
  spec.distribution = oracle::FaninDist::kAdversarialPow2;
  instances.push_back(oracle::generate_circuit(spec));

  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto m = monte_carlo(instances[i], 1000, 1100 + i);
    ok = ok && m.mean <= m.bound + 3 * m.se;
    detail += fmt("%sp=%.3g mean=%.4f bound=%.4f se=%.4f", i ? "; " : "", m.p, m.mean, m.bound, m.se);
  }
  report(7, ok, "exceptional gates under the random restriction stay within 3*delta*p*n", detail);
}

// Two-branch formula coded directly in long double.
long double direct_savings(long double p, long double f, long double c) {
  if (p * f < 1.0L / (4.0L * c)) return p / 4.0L;
  return p / 2.0L - (c / f) * std::log2(8.0L * c * p * f);
}

void savings_and_choice() {
  testing::Rng rng(1008);
  int grid_ok = 0, grid_total = 0;
  for (int i = 0; i < 1000; ++i) {
    const Rational p = i % 2 ? Rational(1) / Rational(cpp_int(1) << rng.uniform(0, 20))
                             : Rational(rng.uniform(1, 999), 1000);
    const std::int64_t f = rng.uniform(1, 500);
    const Rational c(rng.uniform(1, 16), rng.uniform(1, 4));
    const auto v = savings(p, f, c);
    ++grid_total;
    if (p * f < 1 / (4 * c)) {
      grid_ok += v.log_terms.empty() && v.rational_part == p / 4;
    } else {
      const long double want = direct_savings(static_cast<long double>(p), static_cast<long double>(f),
                                              static_cast<long double>(c));
      const long double got = v.approx();
      grid_ok += std::abs(got - want) <= 1e-12L * std::max(1.0L, std::abs(want));
    }
  }

  int argmax_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const int ci = static_cast<int>(rng.uniform(1, 4));
    const Rational c(ci);
    WireDistribution dist;
    const int support = static_cast<int>(rng.uniform(1, 5));
    for (int k = 0; k < support; ++k) dist[rng.uniform(1, 200)] += Rational(rng.uniform(1, 8), 8);
    const Rational chosen = choose_p(dist, c);
    // exhaustive scan over the whole grid in long double, first maximum wins
    long double best = -1e300L;
    Rational best_p;
    Rational p(1, 2);
    for (int lvl = 1; lvl <= grid_levels(c); ++lvl, p /= 2) {
      long double v = 0;
      for (const auto& [f, cf] : dist)
        v += static_cast<long double>(cf / c) *
             direct_savings(static_cast<long double>(p), static_cast<long double>(f), static_cast<long double>(c));
      if (lvl == 1 || v > best) {
        best = v;
        best_p = p;
      }
    }
    argmax_ok += chosen == best_p;
  }

  int adversarial_ok = 0, adversarial_total = 0;
  for (int c = 1; c <= 4; ++c) {
    const auto dist = adversarial_distribution(c);
    Rational p(1, 2);
    for (int lvl = 1; lvl <= grid_levels(Rational(c)); ++lvl, p /= 2) {
      ++adversarial_total;
      adversarial_ok += compare(expected_savings(p, dist, Rational(c)), SavingsValue{p / 2, {}}) <= 0;
    }
  }
  report(8, grid_ok == grid_total && argmax_ok == 100 && adversarial_ok == adversarial_total,
         "savings formula, grid argmax and the adversarial p/2 cap",
         fmt("%d/%d grid points, %d/100 argmax, %d/%d adversarial grid points", grid_ok, grid_total, argmax_ok,
             adversarial_ok, adversarial_total));
}

void cross_construction() {
  testing::Rng rng(1009);
  int threshold_ok = 0, symmetric_ok = 0;
  const int total = 150;
  for (int i = 0; i < total; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 12));
    const auto c = testing::random_circuit(rng, n, 3, 5, 6);
    const std::uint64_t masks = std::uint64_t{1} << c.bottom.size();
    std::vector<IneqSystem> systems;
    for (std::uint64_t m = 0; m < masks; ++m) systems.push_back(build_guess_system(c, m));
    bool all = true;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n) && all; ++x) {
      const Assignment a(testing::bits(x, n));
      bool accepted = false;
      for (const auto& s : systems) accepted = accepted || verify(s, a);
      all = accepted == testing::reference_eval(c, a.values);
    }
    threshold_ok += all;
  }
  for (int i = 0; i < total; ++i) {
    const int n = static_cast<int>(rng.uniform(2, 12));
    const auto c = testing::random_symmetric(rng, n, 3, 4, 3);
    std::vector<EqSystem> systems;
    for_each_value_system(reduce(c, Restriction(n)), [&](const EqSystem& e) {
      systems.push_back(e);
      return false;
    });
    bool all = true;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n) && all; ++x) {
      const Assignment a(testing::bits(x, n));
      bool accepted = false;
      for (const auto& s : systems) accepted = accepted || verify(s, a);
      all = accepted == testing::reference_sym_eval(c, a.values);
    }
    symmetric_ok += all;
  }
  report(9, threshold_ok == total && symmetric_ok == total,
         "gate-subset and value-tuple constructions accept exactly the satisfying assignments",
         fmt("%d/%d threshold, %d/%d symmetric", threshold_ok, total, symmetric_ok, total));
}

void speedup() {
  const int n = 24;
  const std::uint64_t limit = std::uint64_t{1} << n;
  const std::vector<double> sweep{0.3, 0.4, 0.5};
  std::vector<int> sweep_below(sweep.size(), 0);
  int below = 0, unsat = 0, runs = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    oracle::GenSpec spec;
    spec.n = n;
    spec.c = 1;
    spec.distribution = oracle::FaninDist::kFixed;
    spec.fixed_fanin = 3;
    spec.seed = 24000 + seed;
    const auto c = oracle::generate_circuit(spec);
    SolveOptions opts;
    opts.force_restriction = true;
    const auto r = solve(c, opts);
    ++runs;
    unsat += !r.witness;
    below += r.counters.total() < limit;
    worst = std::max(worst, std::log2(static_cast<double>(std::max<std::uint64_t>(r.counters.total(), 1))) / n);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      opts.p_override = sweep[k];
      sweep_below[k] += solve(c, opts).counters.total() < limit;
    }
  }
  std::string extra;
  for (std::size_t k = 0; k < sweep.size(); ++k) extra += fmt("; p=%.1f: %d/%d below", sweep[k], sweep_below[k], runs);
  report(10, below == runs, "restriction path uses fewer than 2^n basic operations at n = 24, c = 1, f = 3",
         fmt("derived p: %d/%d runs below 2^24, %d UNSAT, worst exponent %.4f", below, runs, unsat, worst) + extra);
}

}  // namespace

int main() {
  circuits();
  ilp();
  symmetric();
  vecdom();
  counting_identity();
  fanin();
  restriction_stats();
  savings_and_choice();
  cross_construction();
  speedup();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
