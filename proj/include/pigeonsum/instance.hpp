#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "pigeonsum/common.hpp"

namespace pigeonsum {

/// Input as given: positive integers in arbitrary order, duplicates permitted.
struct RawInput {
  std::vector<i64> values;
};

/// Validated problem instance. Weights are sorted strictly increasing and the
/// total obeys the promise sum < 2^n - 1, so every subset sum (and every
/// subset count) fits in 64 bits for n <= 62. orig_index maps each sorted
/// position back to the 1-based position in the raw input.
struct Instance {
  int n = 0;
  std::vector<u64> weights;    // weights[k] is element k+1
  u64 total = 0;
  std::vector<int> orig_index;
};

/// Two distinct index sets with equal weight sums, in original input indices
/// (1-based, each sorted ascending).
struct SolutionPair {
  std::vector<int> a;
  std::vector<int> b;
  u64 sum = 0;

  bool operator==(const SolutionPair&) const = default;
};

using ValidateResult = std::variant<Instance, SolutionPair>;

/// Sorts, checks positivity/size/promise. If two equal values exist, returns
/// the trivial pair of their input positions instead (before the promise
/// check, since such a pair is already an answer).
ValidateResult validate(const RawInput& raw);

/// Shortest prefix of the sorted weights that itself satisfies the promise
/// w([i]) < 2^i - 1; the result's proper prefixes all violate it. Returns the
/// input unchanged when no prefix qualifies.
Instance prefix_reduce(const Instance& inst);

/// Full check of a claimed solution against the raw input values.
bool verify(const RawInput& raw, const SolutionPair& sol);

/// Instance from already-sorted strictly increasing positive weights, without
/// the promise check. Identity orig_index.
Instance instance_from_sorted(std::vector<u64> weights);

u64 subset_sum(const Instance& inst, u64 mask);

/// Sorted 1-based original indices of the elements in `mask`.
std::vector<int> lift_mask(const Instance& inst, u64 mask);

/// Builds the pair from two subset masks; throws Errc::invariant_broken if the
/// masks coincide or their sums are not both `sum`.
SolutionPair solution_from_masks(const Instance& inst, u64 mask_a, u64 mask_b, u64 sum);

// Instance text format: line 1 = n, line 2 = n space-separated integers.
RawInput read_instance_text(std::istream& in);
void write_instance_text(std::ostream& out, const RawInput& raw);

// {"a":[...],"b":[...],"sum":N}
std::string solution_to_json(const SolutionPair& sol);

}  // namespace pigeonsum
