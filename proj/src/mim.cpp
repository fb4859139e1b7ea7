#include "pigeonsum/mim.hpp"

#include <algorithm>

namespace pigeonsum::mim {

namespace {

u64 expand(const std::vector<int>& idx, u64 compact) {
  u64 mask = 0;
  while (compact) {
    int k = std::countr_zero(compact);
    mask |= u64{1} << idx[k];
    compact &= compact - 1;
  }
  return mask;
}

// All subsets of the elements at `idx`, sorted by (sum, compact mask).
// Counter-order enumeration with an O(1) running-sum update per step.
std::vector<Entry> enumerate_sorted(const Instance& inst, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  std::vector<u64> w(k), prefix(k + 1, 0);
  for (int i = 0; i < k; ++i) {
    w[i] = inst.weights[idx[i]];
    prefix[i + 1] = prefix[i] + w[i];
  }
  std::vector<Entry> out;
  out.reserve(u64{1} << k);
  u64 mask = 0, sum = 0;
  for (;;) {
    out.push_back({sum, mask});
    int tz = std::countr_one(mask);
    if (tz >= k) break;
    sum += w[tz] - prefix[tz];
    ++mask;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

u64 HalfTables::expand_left(u64 compact) const { return expand(left_idx, compact); }
u64 HalfTables::expand_right(u64 compact) const { return expand(right_idx, compact); }

HalfTables build(const Instance& inst, u64 subset_of, Metrics* m) {
  if (std::popcount(subset_of) > kMaxBuildBits)
    throw Error(Errc::instance_too_large, "meet-in-middle limited to 52 elements");
  std::vector<int> idx;
  idx.reserve(std::popcount(subset_of));
  u64 rest = subset_of;
  while (rest) {
    idx.push_back(std::countr_zero(rest));
    rest &= rest - 1;
  }
  HalfTables ht;
  const std::size_t half = idx.size() / 2;
  ht.left_idx.assign(idx.begin(), idx.begin() + half);
  ht.right_idx.assign(idx.begin() + half, idx.end());
  ht.left = enumerate_sorted(inst, ht.left_idx);
  ht.right = enumerate_sorted(inst, ht.right_idx);
  if (m) m->subsets_enumerated += ht.left.size() + ht.right.size();
  return ht;
}

u64 count_le(const HalfTables& ht, i64 t) {
  if (t < 0) return 0;
  const u64 bound = static_cast<u64>(t);
  u64 cnt = 0;
  std::size_t j = ht.right.size();
  for (const Entry& x : ht.left) {
    if (x.sum > bound) break;  // left is ascending
    const u64 rem = bound - x.sum;
    while (j > 0 && ht.right[j - 1].sum > rem) --j;
    cnt += j;
  }
  return cnt;
}

std::vector<u64> list_eq(const HalfTables& ht, i64 t, std::size_t limit) {
  std::vector<u64> out;
  if (t < 0 || limit == 0) return out;
  const u64 target = static_cast<u64>(t);
  for (const Entry& x : ht.left) {
    if (x.sum > target) break;
    const u64 rem = target - x.sum;
    auto [lo, hi] = std::equal_range(ht.right.begin(), ht.right.end(), Entry{rem, 0},
                                     [](const Entry& a, const Entry& b) { return a.sum < b.sum; });
    const u64 left_mask = ht.expand_left(x.mask);
    for (auto it = lo; it != hi; ++it) {
      out.push_back(left_mask | ht.expand_right(it->mask));
      if (out.size() == limit) return out;
    }
  }
  return out;
}

}  // namespace pigeonsum::mim
