#pragma once

#include <map>
#include <optional>

#include "pigeonsum/instance.hpp"

namespace pigeonsum::oracle {

/// Exact map t -> f_t (number of subsets summing to t), sparse over achieved
/// sums. Sum of all entries is 2^n.
struct FrequencyTable {
  int n = 0;
  std::map<u64, u64> freq;

  u64 at(u64 t) const {
    auto it = freq.find(t);
    return it == freq.end() ? 0 : it->second;
  }
};

inline constexpr int kMaxOracleN = 26;

/// Full 2^n enumeration. Requires n <= 26.
FrequencyTable frequencies(const Instance& inst);

/// d as the surplus sum_t max(0, f_t - 1).
u64 d_by_surplus(const FrequencyTable& ft);

/// d as the number of non-subset-sums in [0, 2^n).
u64 d_by_zeros(const FrequencyTable& ft);

/// Exact #{S : w(S) <= t} by enumeration. Requires n <= 26.
u64 count_at_most(const Instance& inst, i64 t);

/// First equal-sum pair in binary-counter order over subsets; lifted to
/// original indices. Throws Errc::internal if none exists (impossible for an
/// instance satisfying the promise).
SolutionPair find_solution_brute(const Instance& inst);

/// Smallest j in [0, n-1] with #{t : f_t > 2^j} > delta / (2^{j+1} n),
/// compared in exact integer arithmetic. Such j exists whenever d >= delta;
/// throws Errc::no_witness otherwise.
int witness_j(const FrequencyTable& ft, u64 delta);

}  // namespace pigeonsum::oracle
