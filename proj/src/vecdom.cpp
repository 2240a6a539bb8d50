#include "tcsat/vecdom.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "tcsat/error.hpp"

namespace tcsat {

void VectorSet::push(std::span<const std::int64_t> coords, std::uint64_t tag) {
  if (coords.size() != dim_) throw InputError("vector dimension mismatch");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  tags_.push_back(tag);
}

bool dominates(std::span<const std::int64_t> u, std::span<const std::int64_t> v,
               const std::vector<bool>& strict) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (strict[k] ? !(u[k] > v[k]) : !(u[k] >= v[k])) return false;
  }
  return true;
}

namespace {

using Index = std::uint32_t;

class Search {
 public:
  Search(const DominationInstance& inst, VecdomCounters& counters)
      : a_(inst.a), b_(inst.b), strict_(inst.strict), dim_(inst.dim()), counters_(counters) {
    const std::size_t n = a_.size() + b_.size();
    max_depth_ = dim_ + 2 * static_cast<std::size_t>(std::bit_width(n)) + 8;
  }

  std::optional<DominatingPair> run() {
    std::vector<Index> as(a_.size()), bs(b_.size());
    for (std::size_t i = 0; i < as.size(); ++i) as[i] = static_cast<Index>(i);
    for (std::size_t i = 0; i < bs.size(); ++i) bs[i] = static_cast<Index>(i);
    if (as.empty() || bs.empty()) return std::nullopt;
    return recurse(as, bs, 0, 0);
  }

 private:
  std::optional<DominatingPair> make(Index i, Index j) const {
    return DominatingPair{a_.tag(i), b_.tag(j), i, j};
  }

  // Both index lists are nonempty; coordinates before k are already settled.
  std::optional<DominatingPair> recurse(const std::vector<Index>& as, const std::vector<Index>& bs,
                                        std::size_t k, std::size_t depth) {
    ++counters_.recursion_nodes;
    if (depth > max_depth_) throw std::logic_error("domination recursion exceeded depth guard");

    if (k == dim_) return make(as.front(), bs.front());
    if (as.size() == 1 && bs.size() == 1) {
      counters_.comparisons += dim_ - k;
      for (std::size_t q = k; q < dim_; ++q) {
        const auto u = a_.coord(as[0], q), v = b_.coord(bs[0], q);
        if (strict_[q] ? !(u > v) : !(u >= v)) return std::nullopt;
      }
      return make(as[0], bs[0]);
    }
    if (k + 1 == dim_) return last_coordinate(as, bs, k);

    // Median of coordinate k over A and B together.
    scratch_.clear();
    for (auto i : as) scratch_.push_back(a_.coord(i, k));
    for (auto j : bs) scratch_.push_back(b_.coord(j, k));
    const std::size_t n = scratch_.size();
    std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(n / 2),
                     scratch_.end());
    const std::int64_t median = scratch_[n / 2];
    ++counters_.median_selections;
    counters_.comparisons += 3 * n;

    std::vector<Index> a_hi, a_eq, a_lo, b_hi, b_eq, b_lo;
    for (auto i : as) {
      const auto x = a_.coord(i, k);
      (x > median ? a_hi : x == median ? a_eq : a_lo).push_back(i);
    }
    for (auto j : bs) {
      const auto x = b_.coord(j, k);
      (x > median ? b_hi : x == median ? b_eq : b_lo).push_back(j);
    }

    auto go = [&](const std::vector<Index>& x, const std::vector<Index>& y, std::size_t kk) {
      if (x.empty() || y.empty()) return std::optional<DominatingPair>{};
      return recurse(x, y, kk, depth + 1);
    };
    auto join = [](std::vector<Index> x, const std::vector<Index>& y) {
      x.insert(x.end(), y.begin(), y.end());
      return x;
    };

    if (auto r = go(a_hi, b_hi, k)) return r;
    if (!strict_[k]) {
      if (auto r = go(join(a_eq, a_hi), join(b_eq, b_lo), k + 1)) return r;
    } else {
      // Equal first coordinates cannot satisfy a strict comparison.
      if (auto r = go(a_hi, join(b_eq, b_lo), k + 1)) return r;
      if (auto r = go(a_eq, b_lo, k + 1)) return r;
    }
    return go(a_lo, b_lo, k);
  }

  std::optional<DominatingPair> last_coordinate(const std::vector<Index>& as,
                                                const std::vector<Index>& bs, std::size_t k) {
    Index best_a = as.front(), best_b = bs.front();
    for (auto i : as)
      if (a_.coord(i, k) > a_.coord(best_a, k)) best_a = i;
    for (auto j : bs)
      if (b_.coord(j, k) < b_.coord(best_b, k)) best_b = j;
    counters_.comparisons += as.size() + bs.size() + 1;
    const auto u = a_.coord(best_a, k), v = b_.coord(best_b, k);
    if (strict_[k] ? u > v : u >= v) return make(best_a, best_b);
    return std::nullopt;
  }

  const VectorSet& a_;
  const VectorSet& b_;
  const std::vector<bool>& strict_;
  std::size_t dim_;
  VecdomCounters& counters_;
  std::size_t max_depth_ = 0;
  std::vector<std::int64_t> scratch_;
};

}  // namespace

DominationResult find_dominating_pair(const DominationInstance& inst) {
  if (inst.a.dim() != inst.dim() || inst.b.dim() != inst.dim())
    throw InputError("domination instance dimension mismatch");
  if (inst.a.size() > UINT32_MAX || inst.b.size() > UINT32_MAX)
    throw ResourceError("domination instance too large");

  DominationResult result;
  result.pair = Search(inst, result.counters).run();
  if (result.pair) {
    const auto& p = *result.pair;
    if (!dominates(inst.a.coords(p.index_a), inst.b.coords(p.index_b), inst.strict))
      throw std::logic_error("domination search returned a non-dominating pair");
  }
  return result;
}

boost::multiprecision::cpp_int count_bound(std::uint64_t n, std::uint64_t d) {
  using boost::multiprecision::cpp_int;
  if (n == 0 || d == 0) throw InputError("count_bound needs n >= 1 and d >= 1");
  const std::uint64_t log_n = n == 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(n - 1));
  const std::uint64_t top = d + log_n + 2;
  const std::uint64_t choose = d + 1;
  cpp_int binom = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) {
    binom *= top - choose + i;
    binom /= i;
  }
  return binom * n;
}

}  // namespace tcsat
