#include "tcsat/splitlist.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tcsat/checked.hpp"
#include "tcsat/error.hpp"

namespace tcsat {

namespace {

LinearRow negated(const LinearRow& row, std::int64_t rhs) {
  LinearRow out{row.terms, Relation::kGe, rhs};
  for (auto& t : out.terms) t.weight = checked::neg(t.weight);
  return out;
}

std::int64_t strict_gap(const LinearRow& row, StrictRewrite strict) {
  if (strict == StrictRewrite::kIntegral || row.terms.empty()) return 1;
  std::int64_t gap = INT64_MAX;
  for (const auto& t : row.terms)
    if (t.weight != 0) gap = std::min(gap, t.weight < 0 ? checked::neg(t.weight) : t.weight);
  return gap == INT64_MAX ? 1 : gap;
}

std::uint64_t checked_power(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, static_cast<std::uint64_t>(base), &r))
      throw ResourceError("half-list size does not fit in 64 bits");
  return r;
}

}  // namespace

void IneqSystem::validate() const {
  if (n_vars < 0) throw InputError("negative variable count");
  if (arity < 2 || arity > 255) throw InputError("arity must be in [2, 255]");
  for (const auto& row : rows) {
    std::vector<int> vars;
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= n_vars)
        throw InputError("row variable index " + std::to_string(t.var) + " out of range");
      vars.push_back(t.var);
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      throw InputError("duplicate variable in row");
  }
}

std::vector<LinearRow> to_ge_rows(const LinearRow& row, StrictRewrite strict) {
  switch (row.rel) {
    case Relation::kGe:
      return {LinearRow{row.terms, Relation::kGe, row.rhs}};
    case Relation::kGt:
      return {LinearRow{row.terms, Relation::kGe, checked::add(row.rhs, strict_gap(row, strict))}};
    case Relation::kLe:
      return {negated(row, checked::neg(row.rhs))};
    case Relation::kLt:
      return {negated(row, checked::add(checked::neg(row.rhs), strict_gap(row, strict)))};
    case Relation::kEq:
      return {LinearRow{row.terms, Relation::kGe, row.rhs}, negated(row, checked::neg(row.rhs))};
  }
  throw std::logic_error("unknown relation");
}

std::vector<LinearRow> normalize(const IneqSystem& sys, StrictRewrite strict) {
  std::vector<LinearRow> out;
  for (const auto& row : sys.rows) {
    auto ge = to_ge_rows(row, strict);
    out.insert(out.end(), ge.begin(), ge.end());
  }
  return out;
}

HalfList list_half(const std::vector<LinearRow>& ge_rows, std::vector<int> vars, int arity,
                   Half side) {
  const std::size_t d = ge_rows.size();
  const std::size_t h = vars.size();
  const std::uint64_t count = checked_power(arity, static_cast<int>(h));

  // coef[pos * d + j]: weight of vars[pos] in row j.
  std::vector<std::int64_t> coef(h * d, 0);
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& t : ge_rows[j].terms) {
      auto it = std::find(vars.begin(), vars.end(), t.var);
      if (it != vars.end()) coef[static_cast<std::size_t>(it - vars.begin()) * d + j] = t.weight;
    }

  HalfList out{std::move(vars), VectorSet(d)};
  out.vectors.reserve(count);

  // Partial sums for the current half-assignment, updated by odometer steps.
  std::vector<std::int64_t> sum(d, 0);
  std::vector<int> digit(h, 0);
  std::vector<std::int64_t> vec(d);
  for (std::uint64_t tag = 0; tag < count; ++tag) {
    for (std::size_t j = 0; j < d; ++j)
      vec[j] = side == Half::kFirst ? sum[j] : checked::sub(ge_rows[j].rhs, sum[j]);
    out.vectors.push(vec, tag);

    for (std::size_t pos = 0; pos < h; ++pos) {
      const std::int64_t* w = coef.data() + pos * d;
      if (digit[pos] + 1 < arity) {
        ++digit[pos];
        for (std::size_t j = 0; j < d; ++j) sum[j] = checked::add(sum[j], w[j]);
        break;
      }
      for (std::size_t j = 0; j < d; ++j)
        sum[j] = checked::sub(sum[j], checked::mul(w[j], digit[pos]));
      digit[pos] = 0;
    }
  }
  return out;
}

IlpResult solve_ilp(const IneqSystem& sys, const SplitListOptions& options) {
  sys.validate();
  const auto rows = normalize(sys);
  if (rows.size() > 62) throw ResourceError("more than 62 normalized rows");

  const int n = sys.n_vars;
  const int first = (n + 1) / 2;
  if (first > options.max_half)
    throw ResourceError("half size " + std::to_string(first) + " exceeds limit " +
                        std::to_string(options.max_half));

  std::vector<int> s1, s2;
  for (int v = 0; v < n; ++v) (v < first ? s1 : s2).push_back(v);

  auto half_a = list_half(rows, s1, sys.arity, Half::kFirst);
  auto half_b = list_half(rows, s2, sys.arity, Half::kSecond);

  IlpResult result;
  result.counters.vectors = half_a.vectors.size() + half_b.vectors.size();

  DominationInstance inst;
  inst.a = std::move(half_a.vectors);
  inst.b = std::move(half_b.vectors);
  inst.strict.assign(rows.size(), false);

  const auto dom = find_dominating_pair(inst);
  result.counters.comparisons += dom.counters.comparisons;
  result.counters.recursion_nodes += dom.counters.recursion_nodes;
  if (!dom.pair) return result;

  Assignment a(static_cast<std::size_t>(n), sys.arity);
  auto unpack = [&](const std::vector<int>& vars, std::uint64_t tag) {
    for (int v : vars) {
      a[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(tag % static_cast<std::uint64_t>(sys.arity));
      tag /= static_cast<std::uint64_t>(sys.arity);
    }
  };
  unpack(half_a.vars, dom.pair->tag_a);
  unpack(half_b.vars, dom.pair->tag_b);
  if (!verify(sys, a)) throw std::logic_error("split-and-list witness fails verification");
  result.witness = std::move(a);
  return result;
}

bool verify(const IneqSystem& sys, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(sys.n_vars)) return false;
  for (auto v : a.values)
    if (v >= sys.arity) return false;
  for (const auto& row : sys.rows) {
    __int128 s = 0;
    for (const auto& t : row.terms) s += static_cast<__int128>(t.weight) * a[static_cast<std::size_t>(t.var)];
    bool ok = false;
    switch (row.rel) {
      case Relation::kGe: ok = s >= row.rhs; break;
      case Relation::kGt: ok = s > row.rhs; break;
      case Relation::kLe: ok = s <= row.rhs; break;
      case Relation::kLt: ok = s < row.rhs; break;
      case Relation::kEq: ok = s == row.rhs; break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace tcsat
