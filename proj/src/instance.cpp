#include "pigeonsum/instance.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace pigeonsum {

ValidateResult validate(const RawInput& raw) {
  const std::size_t n = raw.values.size();
  if (n == 0) throw Error(Errc::empty_input, "empty input");
  if (n > 62) throw Error(Errc::too_large, "n > 62");

  for (i64 v : raw.values) {
    if (v <= 0) throw Error(Errc::non_positive, "values must be positive");
  }
  const u64 limit = pow2(static_cast<int>(n));  // weights must be < 2^n
  for (i64 v : raw.values) {
    if (static_cast<u64>(v) >= limit) throw Error(Errc::too_large, "value >= 2^n");
  }

  // An equal pair is already an answer; report it before the promise check.
  std::unordered_map<u64, int> seen;
  seen.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    u64 v = static_cast<u64>(raw.values[i]);
    auto [it, inserted] = seen.emplace(v, static_cast<int>(i) + 1);
    if (!inserted) {
      SolutionPair dup;
      dup.a = {it->second};
      dup.b = {static_cast<int>(i) + 1};
      dup.sum = v;
      return dup;
    }
  }

  u128 total = 0;  // 62 values below 2^62 can overflow 64 bits
  for (i64 v : raw.values) total += static_cast<u64>(v);
  if (total >= (u128)limit - 1) throw Error(Errc::promise_violated, "sum >= 2^n - 1");

  Instance inst;
  inst.n = static_cast<int>(n);
  inst.total = static_cast<u64>(total);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return raw.values[a] < raw.values[b]; });
  inst.weights.reserve(n);
  inst.orig_index.reserve(n);
  for (int pos : order) {
    inst.weights.push_back(static_cast<u64>(raw.values[pos]));
    inst.orig_index.push_back(pos + 1);
  }
  return inst;
}

Instance prefix_reduce(const Instance& inst) {
  u64 prefix = 0;
  for (int i = 1; i <= inst.n; ++i) {
    prefix += inst.weights[i - 1];
    if (prefix < pow2(i) - 1) {
      if (i == inst.n) return inst;
      Instance out;
      out.n = i;
      out.weights.assign(inst.weights.begin(), inst.weights.begin() + i);
      out.orig_index.assign(inst.orig_index.begin(), inst.orig_index.begin() + i);
      out.total = prefix;
      return out;
    }
  }
  return inst;  // only reachable when the input itself violates the promise
}

bool verify(const RawInput& raw, const SolutionPair& sol) {
  const int n = static_cast<int>(raw.values.size());
  auto sum_of = [&](const std::vector<int>& idx, u64& out) {
    out = 0;
    int prev = 0;
    for (int i : idx) {
      if (i < 1 || i > n || i <= prev) return false;  // in range, strictly ascending
      out += static_cast<u64>(raw.values[i - 1]);
      prev = i;
    }
    return true;
  };
  u64 sa = 0, sb = 0;
  if (!sum_of(sol.a, sa) || !sum_of(sol.b, sb)) return false;
  if (sol.a == sol.b) return false;
  return sa == sb && sa == sol.sum;
}

Instance instance_from_sorted(std::vector<u64> weights) {
  Instance inst;
  inst.n = static_cast<int>(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0 || (i > 0 && weights[i] <= weights[i - 1]))
      throw Error(Errc::bad_format, "weights must be strictly increasing and positive");
    inst.total += weights[i];
  }
  inst.weights = std::move(weights);
  inst.orig_index.resize(inst.n);
  std::iota(inst.orig_index.begin(), inst.orig_index.end(), 1);
  return inst;
}

u64 subset_sum(const Instance& inst, u64 mask) {
  u64 s = 0;
  while (mask) {
    int k = std::countr_zero(mask);
    s += inst.weights[k];
    mask &= mask - 1;
  }
  return s;
}

std::vector<int> lift_mask(const Instance& inst, u64 mask) {
  std::vector<int> out;
  out.reserve(std::popcount(mask));
  while (mask) {
    int k = std::countr_zero(mask);
    out.push_back(inst.orig_index[k]);
    mask &= mask - 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SolutionPair solution_from_masks(const Instance& inst, u64 mask_a, u64 mask_b, u64 sum) {
  if (mask_a == mask_b) throw Error(Errc::invariant_broken, "solution masks coincide");
  if (subset_sum(inst, mask_a) != sum || subset_sum(inst, mask_b) != sum)
    throw Error(Errc::invariant_broken, "solution masks do not sum to target");
  SolutionPair sol;
  sol.a = lift_mask(inst, mask_a);
  sol.b = lift_mask(inst, mask_b);
  sol.sum = sum;
  return sol;
}

RawInput read_instance_text(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n <= 0) throw Error(Errc::bad_format, "expected a positive count on line 1");
  RawInput raw;
  raw.values.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    i64 v;
    if (!(in >> v)) throw Error(Errc::bad_format, "expected " + std::to_string(n) + " values");
    raw.values.push_back(v);
  }
  return raw;
}

void write_instance_text(std::ostream& out, const RawInput& raw) {
  out << raw.values.size() << '\n';
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    if (i) out << ' ';
    out << raw.values[i];
  }
  out << '\n';
}

std::string solution_to_json(const SolutionPair& sol) {
  nlohmann::json j;
  j["a"] = sol.a;
  j["b"] = sol.b;
  j["sum"] = sol.sum;
  return j.dump();
}

}  // namespace pigeonsum
