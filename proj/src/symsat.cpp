#include "tcsat/symsat.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "tcsat/checked.hpp"
#include "tcsat/error.hpp"

namespace tcsat {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Gates and circuits

bool accepts(const Predicate& p, std::int64_t value) {
  return std::visit(
      [value](const auto& q) -> bool {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, pred::AtLeast>) {
          return value >= q.t;
        } else if constexpr (std::is_same_v<T, pred::Exactly>) {
          return value == q.v;
        } else if constexpr (std::is_same_v<T, pred::Modulo>) {
          const std::int64_t rem = ((value % q.m) + q.m) % q.m;
          return rem == q.r;
        } else {
          return q.values.contains(value);
        }
      },
      p);
}

namespace {

void check_predicate(const Predicate& p) {
  if (const auto* m = std::get_if<pred::Modulo>(&p)) {
    if (m->m <= 0) throw InputError("modulus must be positive");
    if (m->r < 0 || m->r >= m->m) throw InputError("remainder must be in [0, m)");
  }
}

void check_terms(const std::vector<WeightedInput>& terms, int n_vars) {
  std::vector<int> seen;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= n_vars) throw InputError("variable index out of range");
    if (t.weight == 0) throw InputError("zero weight");
    seen.push_back(t.var);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError("duplicate variable in gate");
}

std::int64_t abs_sum(const std::vector<WeightedInput>& terms) {
  std::int64_t s = 0;
  for (const auto& t : terms) s = checked::add(s, t.weight < 0 ? checked::neg(t.weight) : t.weight);
  return s;
}

std::int64_t value_of(const std::vector<WeightedInput>& terms, std::span<const std::uint8_t> a) {
  __int128 s = 0;
  for (const auto& t : terms)
    if (a[static_cast<std::size_t>(t.var)]) s += t.weight;
  return checked::narrow(s);
}

}  // namespace

std::int64_t SymmetricGate::weighted_fan_in() const { return abs_sum(inputs); }

std::int64_t SymmetricCircuit::weighted_wires() const {
  std::int64_t w = 0;
  for (const auto& g : bottom) w = checked::add(w, g.weighted_fan_in());
  return w;
}

void SymmetricCircuit::validate() const {
  if (n_vars < 0) throw InputError("negative variable count");
  if (declared_c < 1) throw InputError("declared wire density must be at least 1");
  for (const auto& g : bottom) {
    check_terms(g.inputs, n_vars);
    check_predicate(g.predicate);
  }
  check_terms(top.direct, n_vars);
  check_predicate(top.predicate);
  std::vector<int> seen;
  for (const auto& gi : top.gates) {
    if (gi.gate < 0 || static_cast<std::size_t>(gi.gate) >= bottom.size())
      throw InputError("top gate references unknown bottom gate");
    if (gi.weight == 0) throw InputError("zero weight");
    seen.push_back(gi.gate);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError("duplicate gate in top gate");
  if (weighted_wires() > checked::mul(declared_c, std::max(n_vars, 1)))
    throw InputError("weighted wires exceed the declared c * n budget");
}

bool evaluate(const SymmetricCircuit& circuit, std::span<const std::uint8_t> a) {
  if (a.size() != static_cast<std::size_t>(circuit.n_vars))
    throw InputError("assignment length does not match circuit");
  __int128 top = value_of(circuit.top.direct, a);
  for (const auto& gi : circuit.top.gates) {
    const auto& g = circuit.bottom[static_cast<std::size_t>(gi.gate)];
    if (accepts(g.predicate, value_of(g.inputs, a))) top += gi.weight;
  }
  return accepts(circuit.top.predicate, checked::narrow(top));
}

bool evaluate(const SymmetricCircuit& circuit, const Assignment& a) {
  if (a.arity != 2) throw InputError("circuit evaluation needs a Boolean assignment");
  return evaluate(circuit, std::span<const std::uint8_t>(a.values));
}

std::uint64_t fingerprint(const SymmetricCircuit& circuit) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  auto mix_pred = [&](const Predicate& p) {
    mix(static_cast<std::int64_t>(p.index()));
    std::visit(
        [&](const auto& q) {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, pred::AtLeast>) mix(q.t);
          else if constexpr (std::is_same_v<T, pred::Exactly>) mix(q.v);
          else if constexpr (std::is_same_v<T, pred::Modulo>) { mix(q.m); mix(q.r); }
          else for (auto v : q.values) mix(v);
        },
        p);
  };
  mix(circuit.n_vars);
  mix(circuit.declared_c);
  for (const auto& g : circuit.bottom) {
    for (const auto& t : g.inputs) { mix(t.var); mix(t.weight); }
    mix_pred(g.predicate);
  }
  for (const auto& gi : circuit.top.gates) { mix(gi.gate); mix(gi.weight); }
  for (const auto& t : circuit.top.direct) { mix(t.var); mix(t.weight); }
  mix_pred(circuit.top.predicate);
  return h;
}

// ---------------------------------------------------------------------------
// Linear equations

bool verify(const EqSystem& sys, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(sys.n_vars)) return false;
  for (auto v : a.values)
    if (v > 1) return false;
  for (const auto& row : sys.rows) {
    __int128 s = 0;
    for (const auto& t : row.terms) s += static_cast<__int128>(t.weight) * a[static_cast<std::size_t>(t.var)];
    if (s != row.rhs) return false;
  }
  return true;
}

std::int64_t encoding_base(const EqSystem& sys) {
  std::int64_t max_w = 0;
  for (const auto& row : sys.rows)
    for (const auto& t : row.terms) max_w = std::max(max_w, t.weight < 0 ? checked::neg(t.weight) : t.weight);
  return std::max<std::int64_t>(2, checked::add(checked::mul(checked::mul(2, sys.n_vars), max_w), 1));
}

cpp_int encode_profile(std::span<const std::int64_t> values, std::int64_t base) {
  cpp_int code = 0;
  cpp_int scale = 1;
  for (auto v : values) {
    code += scale * v;
    scale *= base;
  }
  return code;
}

std::vector<std::int64_t> decode_profile(cpp_int code, std::int64_t base, std::size_t digits) {
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j < digits; ++j) {
    cpp_int rem = code % base;  // sign follows the dividend
    if (rem > base / 2)
      rem -= base;
    else if (rem < -(base / 2))
      rem += base;
    out.push_back(rem.convert_to<std::int64_t>());
    code = (code - rem) / base;
  }
  return out;
}

namespace {

template <class Sum>
struct Listed {
  Sum sum;
  std::uint32_t mask;
};

template <class Sum>
std::optional<std::pair<std::uint32_t, std::uint32_t>> meet_in_the_middle(
    const std::vector<Sum>& item, std::size_t first, const Sum& target, WorkCounters& counters) {
  const std::size_t n = item.size();
  auto list = [&](std::size_t lo, std::size_t hi) {
    const std::size_t h = hi - lo;
    std::vector<Listed<Sum>> out(std::size_t{1} << h);
    out[0] = {Sum(0), 0};
    for (std::size_t bit = 0; bit < h; ++bit) {
      const std::size_t half = std::size_t{1} << bit;
      for (std::size_t m = 0; m < half; ++m)
        out[half + m] = {out[m].sum + item[lo + bit], static_cast<std::uint32_t>(half + m)};
    }
    return out;
  };
  auto left = list(0, first);
  auto right = list(first, n);
  counters.vectors += left.size() + right.size();

  std::sort(right.begin(), right.end(), [](const auto& x, const auto& y) { return x.sum < y.sum; });
  const auto log_r = static_cast<std::uint64_t>(std::bit_width(right.size()));
  counters.comparisons += right.size() * log_r;

  for (const auto& l : left) {
    const Sum want = target - l.sum;
    auto it = std::lower_bound(right.begin(), right.end(), want,
                               [](const auto& x, const Sum& w) { return x.sum < w; });
    counters.comparisons += log_r;
    if (it != right.end() && it->sum == want) return std::pair{l.mask, it->mask};
  }
  return std::nullopt;
}

template <class Sum>
Sum encode_as(std::span<const std::int64_t> values, std::int64_t base) {
  Sum code = 0, scale = 1;
  for (auto v : values) {
    code += scale * Sum(v);
    scale *= Sum(base);
  }
  return code;
}

}  // namespace

EqResult solve_boolean_linear_system(const EqSystem& sys) {
  EqResult result;
  result.counters.eq_solves = 1;
  const int n = sys.n_vars;
  if (n < 0) throw InputError("negative variable count");
  if (n > 52) throw ResourceError("linear-equation solver refuses more than 52 variables");
  for (const auto& row : sys.rows)
    for (const auto& t : row.terms)
      if (t.var < 0 || t.var >= n) throw InputError("variable index out of range");

  // A row whose rhs exceeds its absolute weight mass has no Boolean solution;
  // excluding it keeps every digit of (sum - rhs) strictly inside the base.
  for (const auto& row : sys.rows) {
    const std::int64_t mass = abs_sum(row.terms);
    if (row.rhs > mass || row.rhs < -mass) return result;
  }

  const std::int64_t base = encoding_base(sys);
  const std::size_t digits = sys.rows.size();
  std::vector<std::vector<std::int64_t>> profile(static_cast<std::size_t>(n), std::vector<std::int64_t>(digits, 0));
  std::vector<std::int64_t> rhs(digits);
  for (std::size_t j = 0; j < digits; ++j) {
    rhs[j] = sys.rows[j].rhs;
    for (const auto& t : sys.rows[j].terms)
      profile[static_cast<std::size_t>(t.var)][j] = checked::add(profile[static_cast<std::size_t>(t.var)][j], t.weight);
  }

  const std::size_t first = static_cast<std::size_t>((n + 1) / 2);
  std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
  // Encoded magnitudes stay below base^digits * n.
  const double bits = static_cast<double>(digits) * std::log2(static_cast<double>(base)) +
                      std::log2(static_cast<double>(std::max(n, 1))) + 2.0;
  if (bits < 120.0) {
    std::vector<__int128> item;
    for (const auto& p : profile) item.push_back(encode_as<__int128>(p, base));
    hit = meet_in_the_middle<__int128>(item, first, encode_as<__int128>(rhs, base), result.counters);
  } else {
    std::vector<cpp_int> item;
    for (const auto& p : profile) item.push_back(encode_profile(p, base));
    hit = meet_in_the_middle<cpp_int>(item, first, encode_profile(rhs, base), result.counters);
  }
  if (!hit) return result;

  Assignment a(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < first; ++i) a[i] = (hit->first >> i) & 1U;
  for (std::size_t i = first; i < static_cast<std::size_t>(n); ++i) a[i] = (hit->second >> (i - first)) & 1U;
  if (!verify(sys, a)) throw std::logic_error("subset-sum witness fails the equation system");
  result.witness = std::move(a);
  return result;
}

// ---------------------------------------------------------------------------
// Savings

namespace {

// Exact log2 when x is a power of two.
std::optional<cpp_int> exact_log2(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const cpp_int num = numerator(x), den = denominator(x);
  if (num <= 0) return std::nullopt;
  auto pow2 = [](const cpp_int& v) { return (v & (v - 1)) == 0; };
  if (!pow2(num) || !pow2(den)) return std::nullopt;
  return cpp_int(boost::multiprecision::msb(num)) - cpp_int(boost::multiprecision::msb(den));
}

long double log2_big(const cpp_int& v) {
  const auto msb = static_cast<long>(boost::multiprecision::msb(v));
  if (msb < 60) return std::log2(v.convert_to<long double>());
  const cpp_int top = v >> (msb - 60);
  return std::log2(top.convert_to<long double>()) + static_cast<long double>(msb - 60);
}

long double log2_rational(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (x <= 0) throw InputError("log of a non-positive value");
  return log2_big(numerator(x)) - log2_big(denominator(x));
}

long double to_long_double(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (x == 0) return 0.0L;
  const long double mag = std::exp2(log2_rational(x < 0 ? Rational(-x) : x));
  return x < 0 ? -mag : mag;
}

}  // namespace

double SavingsValue::approx() const {
  long double v = to_long_double(rational_part);
  for (const auto& [coeff, arg] : log_terms) v -= to_long_double(coeff) * log2_rational(arg);
  return static_cast<double>(v);
}

SavingsValue SavingsValue::reduced() const {
  SavingsValue out{rational_part, {}};
  for (const auto& [coeff, arg] : log_terms) {
    if (coeff == 0) continue;
    if (auto e = exact_log2(arg))
      out.rational_part -= coeff * Rational(*e);
    else
      out.log_terms.emplace_back(coeff, arg);
  }
  return out;
}

bool SavingsValue::is_exact() const { return reduced().log_terms.empty(); }

SavingsValue& SavingsValue::operator+=(const SavingsValue& o) {
  rational_part += o.rational_part;
  log_terms.insert(log_terms.end(), o.log_terms.begin(), o.log_terms.end());
  return *this;
}

SavingsValue SavingsValue::scaled(const Rational& factor) const {
  SavingsValue out{rational_part * factor, log_terms};
  for (auto& t : out.log_terms) t.first *= factor;
  return out;
}

int compare(const SavingsValue& x, const SavingsValue& y) {
  const SavingsValue rx = x.reduced(), ry = y.reduced();
  const Rational diff = rx.rational_part - ry.rational_part;
  if (rx.log_terms.empty() && ry.log_terms.empty()) return diff < 0 ? -1 : diff > 0 ? 1 : 0;
  // Merge equal log arguments exactly, then evaluate in long double.
  std::map<Rational, Rational> net;
  for (const auto& [c, a] : rx.log_terms) net[a] -= c;
  for (const auto& [c, a] : ry.log_terms) net[a] += c;
  long double irr = 0.0L;
  for (const auto& [a, c] : net)
    if (c != 0) irr += to_long_double(c) * log2_rational(a);
  if (irr == 0.0L) return diff < 0 ? -1 : diff > 0 ? 1 : 0;
  const long double total = to_long_double(diff) + irr;
  return total < 0 ? -1 : total > 0 ? 1 : 0;
}

SavingsValue savings(const Rational& p, std::int64_t f, const Rational& c) {
  if (p <= 0 || p > 1) throw InputError("savings needs 0 < p <= 1");
  if (f < 1) throw InputError("savings needs f >= 1");
  if (c <= 0) throw InputError("savings needs c > 0");
  const Rational pf = p * f;
  if (pf < 1 / (4 * c)) return SavingsValue{p / 4, {}};
  return SavingsValue{p / 2, {{c / f, 8 * c * pf}}};
}

WireDistribution wire_distribution(const SymmetricCircuit& circuit) {
  WireDistribution dist;
  const std::int64_t n = std::max(circuit.n_vars, 1);
  for (const auto& g : circuit.bottom) {
    const std::int64_t f = g.weighted_fan_in();
    if (f > 0) dist[f] += Rational(f, n);
  }
  return dist;
}

WireDistribution adversarial_distribution(int c) {
  if (c < 1 || c > 62) throw InputError("adversarial distribution needs 1 <= c <= 62");
  WireDistribution dist;
  for (int j = 1; j <= c; ++j) dist[std::int64_t{1} << j] = 1;
  return dist;
}

SavingsValue expected_savings(const Rational& p, const WireDistribution& dist, const Rational& c) {
  SavingsValue total;
  for (const auto& [f, cf] : dist)
    if (cf != 0) total += savings(p, f, c).scaled(cf / c);
  return total.reduced();
}

PDistribution PDistribution::make(int levels) {
  if (levels < 1) throw InputError("p-distribution needs at least one level");
  PDistribution d;
  d.levels = levels;
  Rational total = 0;
  std::vector<Rational> raw;
  for (int i = 1; i <= levels; ++i) {
    d.support.push_back(Rational(1) / Rational(cpp_int(1) << i));
    raw.push_back(Rational(1) / Rational(cpp_int(1) << (levels - i + 1)));
    total += raw.back();
  }
  d.normalization = 1 / total;
  for (auto& r : raw) d.masses.push_back(d.normalization * r);
  return d;
}

int grid_levels(const Rational& c, double kappa) {
  const double cd = static_cast<double>(c);
  return std::max(1, static_cast<int>(std::ceil(kappa * cd * cd * std::log2(std::max(cd, 2.0)))));
}

SavingsValue mixed_savings(const PDistribution& d, const WireDistribution& dist, const Rational& c) {
  SavingsValue total;
  for (std::size_t i = 0; i < d.support.size(); ++i)
    total += expected_savings(d.support[i], dist, c).scaled(d.masses[i]);
  return total.reduced();
}

Rational choose_p(const WireDistribution& dist, const Rational& c, double kappa) {
  const int levels = grid_levels(c, kappa);
  std::int64_t max_f = 0;
  for (const auto& [f, cf] : dist)
    if (cf != 0) max_f = std::max(max_f, f);
  Rational best_p = Rational(1, 2);
  SavingsValue best = expected_savings(best_p, dist, c);
  Rational p = best_p;
  for (int i = 2; i <= levels; ++i) {
    // All gates on the p/4 branch: the remaining grid values halve each step.
    if (p * max_f < 1 / (4 * c)) break;
    p /= 2;
    auto value = expected_savings(p, dist, c);
    if (compare(value, best) > 0) {
      best = std::move(value);
      best_p = p;
    }
  }
  return best_p;
}

// ---------------------------------------------------------------------------
// Residual circuits

SymmetricResidual reduce(const SymmetricCircuit& circuit, const Restriction& r) {
  if (r.n_vars() != circuit.n_vars) throw InputError("restriction does not match circuit");
  std::vector<int> index(static_cast<std::size_t>(circuit.n_vars), -1);
  int n_free = 0;
  for (int v = 0; v < circuit.n_vars; ++v)
    if (r.is_free(v)) index[static_cast<std::size_t>(v)] = n_free++;

  SymmetricResidual out;
  out.n_free = n_free;
  out.top_linear.assign(static_cast<std::size_t>(n_free), 0);
  out.top_predicate = circuit.top.predicate;

  for (const auto& t : circuit.top.direct) {
    const int idx = index[static_cast<std::size_t>(t.var)];
    if (idx >= 0)
      out.top_linear[static_cast<std::size_t>(idx)] = checked::add(out.top_linear[static_cast<std::size_t>(idx)], t.weight);
    else if (r.value(t.var))
      out.top_constant = checked::add(out.top_constant, t.weight);
  }

  std::vector<std::int64_t> top_weight(circuit.bottom.size(), 0);
  for (const auto& gi : circuit.top.gates)
    top_weight[static_cast<std::size_t>(gi.gate)] = checked::add(top_weight[static_cast<std::size_t>(gi.gate)], gi.weight);

  for (std::size_t g = 0; g < circuit.bottom.size(); ++g) {
    const std::int64_t tw = top_weight[g];
    if (tw == 0) continue;  // output never reaches the top gate
    const auto& gate = circuit.bottom[g];
    ExceptionalGate eg;
    for (const auto& t : gate.inputs) {
      const int idx = index[static_cast<std::size_t>(t.var)];
      if (idx >= 0)
        eg.terms.push_back({idx, t.weight});
      else if (r.value(t.var))
        eg.offset = checked::add(eg.offset, t.weight);
    }
    if (eg.terms.empty()) {
      if (accepts(gate.predicate, eg.offset)) out.top_constant = checked::add(out.top_constant, tw);
    } else if (eg.terms.size() == 1) {
      const auto [x, w] = eg.terms.front();
      const std::int64_t g0 = accepts(gate.predicate, eg.offset) ? 1 : 0;
      const std::int64_t g1 = accepts(gate.predicate, checked::add(eg.offset, w)) ? 1 : 0;
      out.top_constant = checked::add(out.top_constant, checked::mul(tw, g0));
      auto& coeff = out.top_linear[static_cast<std::size_t>(x)];
      coeff = checked::add(coeff, checked::mul(tw, g1 - g0));
    } else {
      eg.predicate = gate.predicate;
      eg.top_weight = tw;
      out.gates.push_back(std::move(eg));
    }
  }
  return out;
}

std::vector<std::int64_t> candidate_values(const std::vector<WeightedInput>& terms) {
  std::int64_t neg = 0, pos = 0;
  for (const auto& t : terms) (t.weight < 0 ? neg : pos) = checked::add(t.weight < 0 ? neg : pos, t.weight);
  const std::int64_t span = checked::sub(pos, neg);
  std::vector<std::int64_t> out;
  if (terms.size() < 62 && (std::int64_t{1} << terms.size()) <= span + 1) {
    out.push_back(0);
    for (const auto& t : terms) {
      const std::size_t size = out.size();
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] + t.weight);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (std::int64_t v = neg; v <= pos; ++v) out.push_back(v);
  }
  return out;
}

std::uint64_t value_count_bound(const std::vector<WeightedInput>& terms) {
  const auto w = static_cast<std::uint64_t>(abs_sum(terms));
  const std::uint64_t by_range = 2 * w + 1;
  if (terms.size() >= 63) return by_range;
  return std::min(std::uint64_t{1} << terms.size(), by_range);
}

std::uint64_t for_each_value_system(const SymmetricResidual& residual,
                                    const std::function<bool(const EqSystem&)>& visit,
                                    std::uint64_t max_tuples) {
  const std::size_t m = residual.gates.size();
  std::vector<std::vector<std::int64_t>> cands(m);
  for (std::size_t g = 0; g < m; ++g) cands[g] = candidate_values(residual.gates[g].terms);

  std::vector<WeightedInput> top_terms;
  for (int i = 0; i < residual.n_free; ++i)
    if (residual.top_linear[static_cast<std::size_t>(i)] != 0)
      top_terms.push_back({i, residual.top_linear[static_cast<std::size_t>(i)]});
  const auto top_cands = candidate_values(top_terms);

  EqSystem sys;
  sys.n_vars = residual.n_free;
  for (const auto& g : residual.gates) sys.rows.push_back({g.terms, 0});
  sys.rows.push_back({top_terms, 0});

  std::uint64_t tuples = 0;
  std::vector<std::size_t> pos(m, 0);
  for (;;) {
    std::int64_t top_base = residual.top_constant;
    for (std::size_t g = 0; g < m; ++g) {
      const auto& gate = residual.gates[g];
      const std::int64_t v = cands[g][pos[g]];
      sys.rows[g].rhs = v;
      if (accepts(gate.predicate, checked::add(gate.offset, v)))
        top_base = checked::add(top_base, gate.top_weight);
    }
    for (auto u : top_cands) {
      if (++tuples > max_tuples) throw ResourceError("value-tuple guard exceeded");
      if (!accepts(residual.top_predicate, checked::add(top_base, u))) continue;
      sys.rows.back().rhs = u;
      if (visit(sys)) return tuples;
    }

    std::size_t g = 0;
    while (g < m && pos[g] + 1 == cands[g].size()) pos[g++] = 0;
    if (g == m) return tuples;
    ++pos[g];
  }
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct BranchOutcome {
  std::optional<Assignment> witness;
  WorkCounters counters;
};

SymSolveResult exhaustive(const SymmetricCircuit& circuit, SymPath path) {
  if (circuit.n_vars > 40) throw ResourceError("exhaustive search refuses more than 40 variables");
  SymSolveResult result;
  result.path = path;
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

}  // namespace

SymSolveResult solve_symmetric(const SymmetricCircuit& circuit, const SymSolveOptions& options) {
  circuit.validate();
  if (!options.force_restriction && circuit.n_vars <= options.fast_path_max_n)
    return exhaustive(circuit, SymPath::kExhaustive);

  const Rational c(circuit.declared_c);
  const auto dist = wire_distribution(circuit);
  double p = 0.0;
  if (options.p_override) {
    p = *options.p_override;
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("free probability must be in [0, 1]");
  } else {
    const Rational chosen = choose_p(dist, c, options.kappa);
    if (compare(expected_savings(chosen, dist, c), SavingsValue{}) <= 0) {
      auto r = exhaustive(circuit, SymPath::kNonPositiveSavings);
      r.p_used = static_cast<double>(chosen);
      return r;
    }
    p = static_cast<double>(chosen);
  }

  SymSolveResult result;
  result.path = SymPath::kRestriction;
  result.p_used = p;

  std::mt19937_64 rng(options.seed ? *options.seed : fingerprint(circuit));
  std::bernoulli_distribution is_free(p);
  Restriction skeleton(circuit.n_vars);
  for (int v = 0; v < circuit.n_vars; ++v)
    if (!is_free(rng)) skeleton.assign(v, 0);
  result.free_count = skeleton.free_count();

  const std::vector<int> assigned = skeleton.assigned_vars();
  if (static_cast<int>(assigned.size()) > options.max_assigned)
    throw ResourceError("assigned set of " + std::to_string(assigned.size()) +
                        " variables exceeds limit " + std::to_string(options.max_assigned));
  const std::uint64_t branches = std::uint64_t{1} << assigned.size();

  std::mutex mu;
  std::atomic<bool> found{false};
  auto run_branch = [&](std::uint64_t idx, BranchOutcome& out) {
    Restriction r = skeleton;
    for (std::size_t j = 0; j < assigned.size(); ++j) r.assign(assigned[j], static_cast<int>((idx >> j) & 1U));
    ++out.counters.assignments;
    ++out.counters.residual_calls;
    const auto residual = reduce(circuit, r);

    std::uint64_t bound = 1;
    for (const auto& g : residual.gates) bound = __builtin_mul_overflow(bound, value_count_bound(g.terms), &bound) ? UINT64_MAX : bound;
    std::vector<WeightedInput> top_terms;
    for (int i = 0; i < residual.n_free; ++i)
      if (residual.top_linear[static_cast<std::size_t>(i)] != 0)
        top_terms.push_back({i, residual.top_linear[static_cast<std::size_t>(i)]});
    const auto top_range = static_cast<std::uint64_t>(candidate_values(top_terms).size());
    out.counters.guess_bound += __builtin_mul_overflow(bound, top_range, &bound) ? UINT64_MAX : bound;

    bool hit = false;
    out.counters.guesses += for_each_value_system(
        residual,
        [&](const EqSystem& sys) {
          const auto eq = solve_boolean_linear_system(sys);
          out.counters += eq.counters;
          if (!eq.witness) return false;
          Assignment full = combine(r, eq.witness->values);
          if (!evaluate(circuit, full))
            throw std::logic_error("value-guess witness does not satisfy the circuit");
          std::lock_guard lock(mu);
          if (!out.witness) out.witness = std::move(full);
          hit = true;
          return true;
        },
        options.max_tuples);
    return hit;
  };

  const int threads = std::max(1, options.threads);
  std::vector<BranchOutcome> outcomes(static_cast<std::size_t>(threads));
  if (threads == 1) {
    for (std::uint64_t idx = 0; idx < branches; ++idx)
      if (run_branch(idx, outcomes[0])) break;
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t)
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
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (auto& o : outcomes) {
    result.counters += o.counters;
    if (!result.witness && o.witness) result.witness = std::move(o.witness);
  }
  return result;
}

}  // namespace tcsat
