#pragma once

#include <optional>
#include <variant>

#include "pigeonsum/smalld.hpp"

namespace pigeonsum::lowspace {

/// Tracks live auxiliary table entries (words) so tests can assert the
/// polynomial-space contract; the cap is 64 n^2 words beyond the input.
struct SpaceMeter {
  u64 live = 0;
  u64 peak = 0;

  void acquire(u64 words) {
    live += words;
    if (live > peak) peak = live;
  }
  void release(u64 words) { live -= words; }
};

inline u64 space_budget_words(int n) { return 64 * u64(n) * u64(n); }

/// Exact #{S : w(S) <= t} by streaming all 2^n subsets with O(n) extra words.
u64 count_le_stream(const Instance& inst, i64 t, Metrics* m = nullptr,
                    SpaceMeter* meter = nullptr);

/// Same solver as smalld::solve but the borderline candidates and the
/// exact-sum listing enumerate subsets of A by streaming instead of
/// meet-in-middle; output is bitwise identical to smalld::solve.
smalld::SolveResult solve_smalld_ps(const Instance& inst, u64 delta, Metrics* m = nullptr,
                                    SpaceMeter* meter = nullptr);

/// Memory-bounded collision heuristic: Brent cycle-finding on
/// x -> mix(w(S_x) xor salt) truncated to n bits, restarted with fresh salts.
/// A detected cycle yields two walk states with equal images; only true
/// equal-sum collisions of distinct subsets are accepted, truncation
/// artifacts trigger a restart. Not complete -- callers need a fallback.
/// `budget` caps function evaluations (0 means 48 * 2^{ceil(n/2)}).
std::optional<SolutionPair> solve_larged_ps(const Instance& inst, u64 seed, u64 budget = 0,
                                            Metrics* m = nullptr, SpaceMeter* meter = nullptr);

/// Polynomial-space dispatcher: delta = 2^{ceil(0.75 n)} clamped to the legal
/// structural range; structural branch first, collision walk on violation,
/// and the always-terminating streamed bisection as the last resort.
SolutionPair solve_ps(const Instance& inst, u64 seed, Metrics* m = nullptr,
                      SpaceMeter* meter = nullptr);

}  // namespace pigeonsum::lowspace
