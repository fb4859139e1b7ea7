#include "pigeonsum/lowspace.hpp"

#include <algorithm>
#include <tuple>

#include "pigeonsum/bisect.hpp"

namespace pigeonsum::lowspace {

namespace {

struct MeterCharge {
  SpaceMeter* meter;
  u64 words;
  MeterCharge(SpaceMeter* m, u64 w) : meter(m), words(w) {
    if (meter) meter->acquire(words);
  }
  ~MeterCharge() {
    if (meter) meter->release(words);
  }
};

// Stream all 2^k subsets of the first k sorted elements in counter order,
// maintaining the running sum through the trailing-ones flip. k+1 extra words.
template <typename Visit>
void stream_prefix(const Instance& inst, int k, SpaceMeter* meter, Visit&& visit) {
  std::vector<u64> prefw(k + 1, 0);
  for (int i = 0; i < k; ++i) prefw[i + 1] = prefw[i] + inst.weights[i];
  MeterCharge charge(meter, static_cast<u64>(k) + 1);
  u64 mask = 0, sum = 0;
  for (;;) {
    visit(mask, sum);
    const int tz = std::countr_one(mask);
    if (tz >= k) break;
    sum += inst.weights[tz] - prefw[tz];  // bits 0..tz-1 drop out, bit tz enters
    ++mask;
  }
}

u64 count_prefix_le_stream(const Instance& inst, int k, i64 t, Metrics* m, SpaceMeter* meter) {
  if (t < 0) return 0;
  const u64 bound = static_cast<u64>(t);
  u64 cnt = 0;
  stream_prefix(inst, k, meter, [&](u64, u64 sum) { cnt += sum <= bound; });
  if (m) m->subsets_enumerated += pow2(k);
  return cnt;
}

// A match in meet-in-middle listing order: the key is (sum of the low half,
// low-half mask, high-half compact mask).
struct RankedMatch {
  u64 wx, mx, my, mask;
  bool operator<(const RankedMatch& o) const {
    return std::tie(wx, mx, my) < std::tie(o.wx, o.mx, o.my);
  }
};

// Up to `limit` subsets of the first k elements with sum == target, in the
// exact order mim::list_eq emits them, selected in one pass with O(limit)
// extra words.
std::vector<u64> stream_select_eq(const Instance& inst, int k, u64 target, std::size_t limit,
                                  Metrics* m, SpaceMeter* meter) {
  std::vector<u64> out;
  if (limit == 0) return out;
  const int half = k / 2;
  const u64 lowmask = pow2(half) - 1;
  std::vector<RankedMatch> best;
  best.reserve(limit + 1);
  MeterCharge charge(meter, (limit + 1) * 4);

  std::vector<u64> prefw(k + 1, 0);
  for (int i = 0; i < k; ++i) prefw[i + 1] = prefw[i] + inst.weights[i];
  MeterCharge charge2(meter, static_cast<u64>(k) + 1);
  u64 mask = 0, sum = 0, sum_low = 0;
  for (;;) {
    if (sum == target) {
      RankedMatch rm{sum_low, mask & lowmask, mask >> half, mask};
      auto pos = std::upper_bound(best.begin(), best.end(), rm);
      if (pos != best.end() || best.size() < limit) {
        best.insert(pos, rm);
        if (best.size() > limit) best.pop_back();
      }
    }
    const int tz = std::countr_one(mask);
    if (tz >= k) break;
    sum += inst.weights[tz] - prefw[tz];
    if (tz < half) {
      sum_low += inst.weights[tz] - prefw[tz];
    } else {
      sum_low = 0;  // the whole low half just rolled over to zero
    }
    ++mask;
  }
  if (m) m->subsets_enumerated += pow2(k);
  out.reserve(best.size());
  for (const RankedMatch& rm : best) out.push_back(rm.mask);
  return out;
}

}  // namespace

u64 count_le_stream(const Instance& inst, i64 t, Metrics* m, SpaceMeter* meter) {
  return count_prefix_le_stream(inst, inst.n, t, m, meter);
}

smalld::SolveResult solve_smalld_ps(const Instance& inst0, u64 delta, Metrics* m,
                                    SpaceMeter* meter) {
  const Instance inst = prefix_reduce(inst0);
  smalld::StructureReport rep = smalld::check_structure(inst, delta);
  if (!rep.ok) return rep;

  const auto count_fn = [&](i64 t) -> u64 {
    if (t < 0) return 0;
    const u64 T = static_cast<u64>(t);
    u64 cnt = smalld::case1_count(inst, rep, T);
    for (const auto& cand : smalld::case3_candidates(inst, rep, T)) {
      cnt += count_prefix_le_stream(inst, rep.split, (i64)T - (i64)cand.weight, m, meter);
    }
    return cnt;
  };
  const u64 target = bisect::run(inst, count_fn);

  const auto list_fn = [&](u64 t, std::size_t limit) {
    std::vector<u64> out;
    for (const auto& cand : smalld::candidate_bprimes(inst, rep, t)) {
      if (cand.weight > t) continue;
      for (u64 amask :
           stream_select_eq(inst, rep.split, t - cand.weight, limit - out.size(), m, meter)) {
        out.push_back(amask | cand.mask);
      }
      if (out.size() == limit) break;
    }
    return out;
  };
  return bisect::extract(inst, target, list_fn);
}

std::optional<SolutionPair> solve_larged_ps(const Instance& inst, u64 seed, u64 budget, Metrics* m,
                                            SpaceMeter* meter) {
  (void)meter;  // the walk keeps a constant number of words
  const int n = inst.n;
  const u64 domain = pow2(n) - 1;
  if (budget == 0) budget = 48 * pow2((n + 1) / 2);

  u64 evals = 0;
  for (u64 restart = 0; evals < budget; ++restart) {
    const u64 salt = derive_seed(seed, 0xcafe, restart);
    const u64 start = derive_seed(seed, 0xf00d, restart) & domain;
    const auto step = [&](u64 x) {
      ++evals;
      if (m) ++m->subsets_enumerated;
      return mix64(subset_sum(inst, x) ^ salt) & domain;
    };

    // Brent: cycle length first.
    u64 power = 1, lambda = 1;
    u64 tortoise = start, hare = step(start);
    while (tortoise != hare && evals < budget) {
      if (power == lambda) {
        tortoise = hare;
        power <<= 1;
        lambda = 0;
      }
      hare = step(hare);
      ++lambda;
    }
    if (tortoise != hare) break;  // budget ran out mid-walk

    // Walk two pointers lambda apart to the cycle entry; their predecessors
    // are two distinct states with the same image.
    u64 lead = start;
    for (u64 i = 0; i < lambda && evals < budget; ++i) lead = step(lead);
    if (lead == start) continue;  // start sits on the cycle, no tail
    u64 a = start, b = lead, prev_a = 0, prev_b = 0;
    while (a != b && evals < budget) {
      prev_a = a;
      prev_b = b;
      a = step(a);
      b = step(b);
    }
    if (a != b) break;
    const u64 wa = subset_sum(inst, prev_a);
    if (wa == subset_sum(inst, prev_b)) {
      return solution_from_masks(inst, prev_a, prev_b, wa);
    }
    // Equal images from unequal sums: truncation artifact, take a new salt.
  }
  return std::nullopt;
}

SolutionPair solve_ps(const Instance& inst0, u64 seed, Metrics* m, SpaceMeter* meter) {
  const Instance inst = prefix_reduce(inst0);
  const int n = inst.n;

  const u64 delta_cap = static_cast<u64>((u128{1} << n) / ((u128)3 * n * n));
  if (delta_cap >= 1) {
    const u64 delta = std::min(pow2((3 * n + 3) / 4), delta_cap);
    auto res = solve_smalld_ps(inst, delta, m, meter);
    if (auto* sol = std::get_if<SolutionPair>(&res)) return *sol;
  }
  if (auto sol = solve_larged_ps(inst, seed, 0, m, meter)) return *sol;

  // Streamed pigeonhole bisection: slow but total.
  const u64 target =
      bisect::run(inst, [&](i64 t) { return count_le_stream(inst, t, m, meter); });
  return bisect::extract(inst, target, [&](u64 t, std::size_t limit) {
    return stream_select_eq(inst, n, t, limit, m, meter);
  });
}

}  // namespace pigeonsum::lowspace
