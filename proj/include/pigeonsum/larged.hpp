#pragma once

#include <atomic>
#include <optional>
#include <random>
#include <vector>

#include "pigeonsum/instance.hpp"

namespace pigeonsum::larged {

/// Parameter schedule for one level j: bins modulo a random prime near P are
/// subsampled at rate alpha, tuned so a bin holding k sums of multiplicity
/// >= h = 2^j + 1 yields a same-sum pair with constant probability.
struct LargeDParams {
  int n = 0;
  int j = 0;
  u64 delta = 0;
  u64 h = 0;      // 2^j + 1
  u64 m = 0;      // ceil(delta / (2^{j+1} n))
  u64 P = 0;      // floor(2m * min(1, (2^n / (h m^2))^{2/3})), clamped to [2, 2m]
  u64 k = 0;      // ceil(m / (4P))
  double alpha = 0.0;  // 1 / (2 h sqrt(k)) <= 1 / (2h)
};

/// Requires n >= 3, 0 <= j <= n-1 and 2^{n/2} <= delta < 2^n; throws
/// Errc::param_out_of_range otherwise.
LargeDParams params(int n, u64 delta, int j);

/// The real-valued P formula before rounding; exposed for tests.
long double p_formula(int n, u64 h, u64 m);

/// Uniform prime in [P, 2P] by rejection sampling with deterministic
/// Miller-Rabin.
u64 sample_prime(u64 P, std::mt19937_64& rng);

/// D[i][r] = #{S subset of [i] : w(S) = r (mod p)} for 0 <= i <= n.
struct ModDpTable {
  u64 p = 0;
  int n = 0;
  std::vector<u64> cells;  // (n+1) x p, row-major

  u64 at(int i, u64 r) const { return cells[static_cast<std::size_t>(i) * p + r]; }
  u64 bin_size(u64 r) const { return at(n, r); }
};

inline constexpr u64 kMaxDpCells = u64{1} << 27;

/// Throws Errc::resource_limit if (n+1)*p exceeds kMaxDpCells.
ModDpTable build_dp(const Instance& inst, u64 p, Metrics* m = nullptr);

/// The rank-th member of bin r (1-based), in ascending-mask order: subsets
/// excluding the largest undecided element precede those including it.
u64 unrank(const ModDpTable& dp, const Instance& inst, u64 r, u64 rank);

/// Bernoulli(alpha) subsample of bin r_star: binomial count, then that many
/// distinct uniform ranks, then unrank. Marginally each bin member is kept
/// with probability exactly alpha.
std::vector<u64> sample_bin(const ModDpTable& dp, const Instance& inst, u64 r_star, double alpha,
                            std::mt19937_64& rng, Metrics* m = nullptr);

/// One randomized round: sample p, build the DP, pick a uniform bin, skip it
/// if oversized (beyond n^2 times the expectation), subsample, sort by sum
/// and scan for an adjacent equal-sum pair.
std::optional<SolutionPair> attempt(const Instance& inst, const LargeDParams& prm,
                                    std::mt19937_64& rng, Metrics* m = nullptr);

inline constexpr u64 kDefaultBudgetFactor = 8;  // budget = 8 n^2 attempts

/// Sweeps j = 0..n-1 repeatedly until a verified pair is found or `budget`
/// attempts are spent (0 means the default 8 n^2). Each attempt runs on a
/// child generator seeded from (seed, j, round) so runs are reproducible and
/// attempts independent. Returns nullopt when the budget is exhausted.
std::optional<SolutionPair> solve(const Instance& inst, u64 delta, u64 seed, u64 budget = 0,
                                  Metrics* m = nullptr, const std::atomic<bool>* stop = nullptr);

}  // namespace pigeonsum::larged
