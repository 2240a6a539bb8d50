#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tcsat {

struct TaggedVector {
  std::vector<std::int64_t> coords;
  std::uint64_t tag = 0;
};

/// Flat storage for equal-dimension tagged vectors.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tags_.size(); }
  bool empty() const { return tags_.empty(); }

  void reserve(std::size_t n) {
    coords_.reserve(n * dim_);
    tags_.reserve(n);
  }
  void push(std::span<const std::int64_t> coords, std::uint64_t tag);
  void push(const TaggedVector& v) { push(v.coords, v.tag); }

  std::span<const std::int64_t> coords(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::int64_t coord(std::size_t i, std::size_t k) const { return coords_[i * dim_ + k]; }
  std::uint64_t tag(std::size_t i) const { return tags_[i]; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> coords_;
  std::vector<std::uint64_t> tags_;
};

/// Find u in A, v in B with u_k >= v_k for every k (u_k > v_k where strict[k]).
struct DominationInstance {
  VectorSet a;
  VectorSet b;
  std::vector<bool> strict;  // one flag per coordinate

  DominationInstance() = default;
  explicit DominationInstance(std::size_t dim) : a(dim), b(dim), strict(dim, false) {}

  std::size_t dim() const { return strict.size(); }
};

struct VecdomCounters {
  std::uint64_t recursion_nodes = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t median_selections = 0;
};

struct DominatingPair {
  std::uint64_t tag_a = 0;
  std::uint64_t tag_b = 0;
  std::size_t index_a = 0;
  std::size_t index_b = 0;
};

struct DominationResult {
  std::optional<DominatingPair> pair;
  VecdomCounters counters;
};

bool dominates(std::span<const std::int64_t> u, std::span<const std::int64_t> v,
               const std::vector<bool>& strict);

/// Median-split divide and conquer. Returns some dominating pair iff one
/// exists; every returned pair is re-verified before it is handed back.
DominationResult find_dominating_pair(const DominationInstance& inst);

/// binom(d + ceil(log2 n) + 2, d + 1) * n, the work bound of the recursion.
boost::multiprecision::cpp_int count_bound(std::uint64_t n, std::uint64_t d);

}  // namespace tcsat
