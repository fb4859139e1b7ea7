#include "pigeonsum/oracle.hpp"

#include <unordered_map>

namespace pigeonsum::oracle {

namespace {

void check_size(const Instance& inst) {
  if (inst.n > kMaxOracleN) throw Error(Errc::instance_too_large, "oracle limited to n <= 26");
}

}  // namespace

FrequencyTable frequencies(const Instance& inst) {
  check_size(inst);
  FrequencyTable ft;
  ft.n = inst.n;
  const u64 end = pow2(inst.n);
  for (u64 mask = 0; mask < end; ++mask) {
    ++ft.freq[subset_sum(inst, mask)];
  }
  return ft;
}

u64 d_by_surplus(const FrequencyTable& ft) {
  u64 d = 0;
  for (const auto& [t, f] : ft.freq) {
    if (f > 1) d += f - 1;
  }
  return d;
}

u64 d_by_zeros(const FrequencyTable& ft) {
  // Achieved sums all lie in [0, 2^n); the rest of the range is zeros.
  u64 nonzero = 0;
  for (const auto& [t, f] : ft.freq) {
    if (t < pow2(ft.n) && f > 0) ++nonzero;
  }
  return pow2(ft.n) - nonzero;
}

u64 count_at_most(const Instance& inst, i64 t) {
  check_size(inst);
  if (t < 0) return 0;
  const u64 bound = static_cast<u64>(t);
  const u64 end = pow2(inst.n);
  u64 cnt = 0;
  for (u64 mask = 0; mask < end; ++mask) {
    if (subset_sum(inst, mask) <= bound) ++cnt;
  }
  return cnt;
}

SolutionPair find_solution_brute(const Instance& inst) {
  check_size(inst);
  std::unordered_map<u64, u64> first_mask;
  const u64 end = pow2(inst.n);
  first_mask.reserve(end);
  for (u64 mask = 0; mask < end; ++mask) {
    u64 s = subset_sum(inst, mask);
    auto [it, inserted] = first_mask.emplace(s, mask);
    if (!inserted) return solution_from_masks(inst, it->second, mask, s);
  }
  throw Error(Errc::internal, "no equal-sum pair found; instance violates the promise");
}

int witness_j(const FrequencyTable& ft, u64 delta) {
  const int n = ft.n;
  for (int j = 0; j < n; ++j) {
    u64 threshold = pow2(j);
    u64 count = 0;
    for (const auto& [t, f] : ft.freq) {
      if (f > threshold) ++count;
    }
    // count > delta / (2^{j+1} n), exactly
    if ((u128)count * pow2(j + 1) * static_cast<u64>(n) > delta) return j;
  }
  throw Error(Errc::no_witness, "no level found; requires d >= delta >= 1");
}

}  // namespace pigeonsum::oracle
