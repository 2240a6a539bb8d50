#include "tcsat/model.hpp"

#include <algorithm>
#include <string>

#include "tcsat/checked.hpp"
#include "tcsat/error.hpp"

namespace tcsat {

namespace {

void check_inputs(const std::vector<WeightedInput>& inputs, int n_vars, const char* where) {
  std::vector<int> seen;
  seen.reserve(inputs.size());
  for (const auto& in : inputs) {
    if (in.var < 0 || in.var >= n_vars)
      throw InputError(std::string(where) + ": variable index " + std::to_string(in.var) +
                       " out of range");
    if (in.weight == 0) throw InputError(std::string(where) + ": zero weight");
    seen.push_back(in.var);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError(std::string(where) + ": duplicate variable");
}

__int128 weighted_sum(const std::vector<WeightedInput>& inputs, std::span<const std::uint8_t> a) {
  __int128 sum = 0;
  for (const auto& in : inputs)
    if (a[static_cast<std::size_t>(in.var)]) sum += in.weight;
  return sum;
}

}  // namespace

std::size_t ThresholdCircuit::wires() const {
  std::size_t w = 0;
  for (const auto& g : bottom) w += g.fan_in();
  return w;
}

void ThresholdCircuit::validate() const {
  if (n_vars < 0) throw InputError("negative variable count");
  if (top_gate_weights.size() != bottom.size())
    throw InputError("top gate needs exactly one weight per bottom gate");
  for (const auto& g : bottom) check_inputs(g.inputs, n_vars, "bottom gate");
  check_inputs(direct_wires, n_vars, "direct wires");
}

void Restriction::assign(int var, int value) {
  if (value < 0 || value > 127) throw InputError("restriction value out of range");
  values_.at(static_cast<std::size_t>(var)) = static_cast<std::int8_t>(value);
}

std::vector<int> Restriction::free_vars() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] == kFree) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Restriction::assigned_vars() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != kFree) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t Restriction::free_count() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), kFree));
}

Assignment combine(const Restriction& r, std::span<const std::uint8_t> free_values) {
  Assignment out(static_cast<std::size_t>(r.n_vars()));
  std::size_t next = 0;
  for (int v = 0; v < r.n_vars(); ++v) {
    if (r.is_free(v)) {
      if (next >= free_values.size()) throw InputError("too few values for free variables");
      out[static_cast<std::size_t>(v)] = free_values[next++];
    } else {
      out[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(r.value(v));
    }
  }
  if (next != free_values.size()) throw InputError("too many values for free variables");
  return out;
}

bool evaluate(const ThresholdCircuit& circuit, std::span<const std::uint8_t> a) {
  if (a.size() != static_cast<std::size_t>(circuit.n_vars))
    throw InputError("assignment length does not match circuit");
  if (circuit.top_gate_weights.size() != circuit.bottom.size())
    throw InputError("top gate needs exactly one weight per bottom gate");
  for (auto v : a)
    if (v > 1) throw InputError("circuit evaluation needs a Boolean assignment");

  __int128 top = weighted_sum(circuit.direct_wires, a);
  for (std::size_t g = 0; g < circuit.bottom.size(); ++g) {
    const auto& gate = circuit.bottom[g];
    if (weighted_sum(gate.inputs, a) >= gate.threshold) top += circuit.top_gate_weights[g];
  }
  return top >= circuit.top_threshold;
}

bool evaluate(const ThresholdCircuit& circuit, const Assignment& a) {
  if (a.arity != 2) throw InputError("circuit evaluation needs a Boolean assignment");
  return evaluate(circuit, std::span<const std::uint8_t>(a.values));
}

ThresholdCircuit simplify(const ThresholdCircuit& circuit, const Restriction& r) {
  if (r.n_vars() != circuit.n_vars) throw InputError("restriction does not match circuit");

  std::vector<int> index(static_cast<std::size_t>(circuit.n_vars), -1);
  int n_free = 0;
  for (int v = 0; v < circuit.n_vars; ++v)
    if (r.is_free(v)) index[static_cast<std::size_t>(v)] = n_free++;

  ThresholdCircuit out;
  out.n_vars = n_free;
  std::int64_t top_threshold = circuit.top_threshold;
  std::vector<std::int64_t> direct(static_cast<std::size_t>(n_free), 0);

  for (const auto& in : circuit.direct_wires) {
    const int idx = index[static_cast<std::size_t>(in.var)];
    if (idx >= 0)
      direct[static_cast<std::size_t>(idx)] = checked::add(direct[static_cast<std::size_t>(idx)], in.weight);
    else if (r.value(in.var))
      top_threshold = checked::sub(top_threshold, in.weight);
  }

  for (std::size_t g = 0; g < circuit.bottom.size(); ++g) {
    const auto& gate = circuit.bottom[g];
    const std::int64_t top_weight = circuit.top_gate_weights[g];
    std::int64_t fixed = 0;
    ThresholdGate kept;
    for (const auto& in : gate.inputs) {
      const int idx = index[static_cast<std::size_t>(in.var)];
      if (idx >= 0)
        kept.inputs.push_back({idx, in.weight});
      else if (r.value(in.var))
        fixed = checked::add(fixed, in.weight);
    }
    const std::int64_t t = checked::sub(gate.threshold, fixed);

    if (kept.inputs.empty()) {
      if (0 >= t) top_threshold = checked::sub(top_threshold, top_weight);
    } else if (kept.inputs.size() == 1) {
      const auto [x, w] = kept.inputs.front();
      const bool at0 = 0 >= t;
      const bool at1 = w >= t;
      auto& coeff = direct[static_cast<std::size_t>(x)];
      if (at0 && at1) {
        top_threshold = checked::sub(top_threshold, top_weight);
      } else if (at1) {
        coeff = checked::add(coeff, top_weight);
      } else if (at0) {
        // gate == 1 - x
        top_threshold = checked::sub(top_threshold, top_weight);
        coeff = checked::sub(coeff, top_weight);
      }
    } else {
      kept.threshold = t;
      out.bottom.push_back(std::move(kept));
      out.top_gate_weights.push_back(top_weight);
    }
  }

  for (int i = 0; i < n_free; ++i)
    if (direct[static_cast<std::size_t>(i)] != 0)
      out.direct_wires.push_back({i, direct[static_cast<std::size_t>(i)]});
  out.top_threshold = top_threshold;
  return out;
}

WireStats wire_stats(const ThresholdCircuit& circuit) {
  WireStats s;
  for (const auto& g : circuit.bottom) {
    s.fan_ins.push_back(g.fan_in());
    s.wires += g.fan_in();
  }
  std::sort(s.fan_ins.begin(), s.fan_ins.end());
  return s;
}

std::uint64_t fingerprint(const ThresholdCircuit& circuit) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(circuit.n_vars);
  for (std::size_t g = 0; g < circuit.bottom.size(); ++g) {
    mix(circuit.bottom[g].threshold);
    for (const auto& in : circuit.bottom[g].inputs) {
      mix(in.var);
      mix(in.weight);
    }
    mix(circuit.top_gate_weights[g]);
  }
  for (const auto& in : circuit.direct_wires) {
    mix(in.var);
    mix(in.weight);
  }
  mix(circuit.top_threshold);
  return h;
}

}  // namespace tcsat
