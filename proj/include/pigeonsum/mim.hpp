#pragma once

#include <vector>

#include "pigeonsum/instance.hpp"

namespace pigeonsum::mim {

struct Entry {
  u64 sum;
  u64 mask;  // compact mask over the half's index list

  bool operator<(const Entry& o) const { return sum != o.sum ? sum < o.sum : mask < o.mask; }
};

/// Sorted subset-sum tables for the two halves of an index set. The first
/// half is the lower floor(k/2) indices; entries are sorted by (sum, mask).
struct HalfTables {
  std::vector<int> left_idx;   // instance bit positions, ascending
  std::vector<int> right_idx;
  std::vector<Entry> left;
  std::vector<Entry> right;

  u64 expand_left(u64 compact) const;
  u64 expand_right(u64 compact) const;
};

inline constexpr int kMaxBuildBits = 52;

/// Tables over the elements of `subset_of` (mask over instance positions).
/// Requires popcount(subset_of) <= 52.
HalfTables build(const Instance& inst, u64 subset_of, Metrics* m = nullptr);

inline u64 full_mask(const Instance& inst) {
  return inst.n == 64 ? ~u64{0} : (u64{1} << inst.n) - 1;
}

/// Exact #{S subset of the build set : w(S) <= t}, two-pointer over the
/// sorted halves.
u64 count_le(const HalfTables& ht, i64 t);

/// Up to `limit` subsets S of the build set with w(S) = t, as masks over
/// instance positions. Emitted in ascending (w(X), maskX, maskY) order where
/// X and Y are the left/right parts; constant amortized work per item after
/// the run walk.
std::vector<u64> list_eq(const HalfTables& ht, i64 t, std::size_t limit);

}  // namespace pigeonsum::mim
