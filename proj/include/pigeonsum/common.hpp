#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace pigeonsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

enum class Errc {
  empty_input,
  non_positive,
  too_large,
  promise_violated,
  bad_format,
  instance_too_large,
  delta_out_of_range,
  structure_required,
  param_out_of_range,
  rank_out_of_range,
  no_witness,
  invariant_broken,
  resource_limit,
  unsatisfiable,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

/// Work counters shared by the solvers and the benchmark harness.
struct Metrics {
  u64 subsets_enumerated = 0;  // subsets materialized or streamed
  u64 dp_cells = 0;            // mod-p DP cells written
  u64 samples_drawn = 0;       // bin members sampled
  u64 attempts = 0;            // randomized attempts
  u64 sort_items = 0;          // items pushed through sorting

  void merge(const Metrics& o) {
    subsets_enumerated += o.subsets_enumerated;
    dp_cells += o.dp_cells;
    samples_drawn += o.samples_drawn;
    attempts += o.attempts;
    sort_items += o.sort_items;
  }
};

inline u64 pow2(int e) { return u64{1} << e; }

// splitmix64 finalizer; bijective on 64-bit words.
inline u64 mix64(u64 z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline u64 derive_seed(u64 seed, u64 a, u64 b) {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xd1b54a32d192ed03ULL * (b + 1));
}

// Uniform integer in [lo, hi] via rejection; avoids implementation-defined
// std::uniform_int_distribution streams so generated instances are portable.
template <typename Rng>
u64 uniform_u64(Rng& rng, u64 lo, u64 hi) {
  u64 span = hi - lo + 1;  // hi = 2^64-1, lo = 0 never used here
  if (span == 0) return rng();
  u64 reject_above = UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    u64 x = rng();
    if (x < reject_above) return lo + x % span;
  }
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 x);

/// Smallest s with s*s >= x.
u64 ceil_sqrt_u64(u64 x);

}  // namespace pigeonsum
