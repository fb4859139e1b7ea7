#include "pigeonsum/larged.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace pigeonsum::larged {

long double p_formula(int n, u64 h, u64 m) {
  const long double ratio = std::exp2((long double)n) / ((long double)h * m * m);
  const long double scale = ratio >= 1.0L ? 1.0L : std::pow(ratio, 2.0L / 3.0L);
  return 2.0L * (long double)m * scale;
}

LargeDParams params(int n, u64 delta, int j) {
  if (n < 3) throw Error(Errc::param_out_of_range, "requires n >= 3");
  if (j < 0 || j >= n) throw Error(Errc::param_out_of_range, "level j must be in [0, n-1]");
  if ((u128)delta * delta < (u128{1} << n) || delta >= pow2(n))
    throw Error(Errc::param_out_of_range, "delta must satisfy 2^{n/2} <= delta < 2^n");

  LargeDParams prm;
  prm.n = n;
  prm.j = j;
  prm.delta = delta;
  prm.h = pow2(j) + 1;
  const u128 q = (u128)pow2(j + 1) * static_cast<u64>(n);
  prm.m = static_cast<u64>(((u128)delta + q - 1) / q);
  const long double p_real = p_formula(n, prm.h, prm.m);
  u64 p = p_real >= 2.0L * (long double)prm.m ? 2 * prm.m : static_cast<u64>(std::floor(p_real));
  prm.P = std::clamp<u64>(p, 2, 2 * prm.m);
  prm.k = (prm.m + 4 * prm.P - 1) / (4 * prm.P);
  prm.alpha = 1.0 / (2.0 * static_cast<double>(prm.h) * std::sqrt(static_cast<double>(prm.k)));
  return prm;
}

u64 sample_prime(u64 P, std::mt19937_64& rng) {
  for (;;) {
    const u64 x = uniform_u64(rng, P, 2 * P);
    if (is_prime_u64(x)) return x;  // Bertrand: a prime exists in [P, 2P]
  }
}

ModDpTable build_dp(const Instance& inst, u64 p, Metrics* m) {
  const int n = inst.n;
  const u64 cells = (static_cast<u64>(n) + 1) * p;
  if (cells > kMaxDpCells) throw Error(Errc::resource_limit, "mod-p DP table too large");
  ModDpTable dp;
  dp.p = p;
  dp.n = n;
  dp.cells.assign(cells, 0);
  dp.cells[0] = 1;  // D[0][r] = [r == 0]
  for (int i = 1; i <= n; ++i) {
    const u64 w = inst.weights[i - 1] % p;
    const u64* prev = dp.cells.data() + static_cast<std::size_t>(i - 1) * p;
    u64* cur = dp.cells.data() + static_cast<std::size_t>(i) * p;
    for (u64 r = 0; r < p; ++r) {
      cur[r] = prev[r] + prev[(r + p - w) % p];
    }
  }
  if (m) m->dp_cells += cells;
  return dp;
}

u64 unrank(const ModDpTable& dp, const Instance& inst, u64 r, u64 rank) {
  if (rank < 1 || rank > dp.bin_size(r))
    throw Error(Errc::rank_out_of_range, "rank must be in [1, |B_r|]");
  u64 mask = 0;
  for (int i = dp.n; i >= 1; --i) {
    const u64 excluded = dp.at(i - 1, r);
    if (rank <= excluded) continue;  // sets without element i come first
    mask |= pow2(i - 1);
    rank -= excluded;
    const u64 w = inst.weights[i - 1] % dp.p;
    r = (r + dp.p - w) % dp.p;
  }
  if (r != 0 || rank != 1) throw Error(Errc::internal, "unrank descent left a remainder");
  return mask;
}

std::vector<u64> sample_bin(const ModDpTable& dp, const Instance& inst, u64 r_star, double alpha,
                            std::mt19937_64& rng, Metrics* m) {
  const u64 size = dp.bin_size(r_star);
  std::vector<u64> out;
  if (size == 0 || alpha <= 0.0) return out;
  std::binomial_distribution<long long> binom(static_cast<long long>(size), alpha);
  const u64 c = static_cast<u64>(binom(rng));
  std::unordered_set<u64> ranks;
  ranks.reserve(c * 2);
  while (ranks.size() < c) ranks.insert(uniform_u64(rng, 1, size));
  out.reserve(c);
  for (u64 rank : ranks) out.push_back(unrank(dp, inst, r_star, rank));
  if (m) m->samples_drawn += c;
  return out;
}

std::optional<SolutionPair> attempt(const Instance& inst, const LargeDParams& prm,
                                    std::mt19937_64& rng, Metrics* m) {
  const u64 p = sample_prime(prm.P, rng);
  const ModDpTable dp = build_dp(inst, p, m);
  const u64 r_star = uniform_u64(rng, 0, p - 1);

  // Skip bins beyond n^2 times the expected size; keeps per-attempt work at
  // the nominal O(P + alpha 2^n / P).
  const u128 big_bin = (u128{1} << inst.n) * static_cast<u64>(inst.n) * inst.n / prm.P;
  if ((u128)dp.bin_size(r_star) > big_bin) return std::nullopt;

  const std::vector<u64> sampled = sample_bin(dp, inst, r_star, prm.alpha, rng, m);
  std::vector<std::pair<u64, u64>> items;  // (sum, mask)
  items.reserve(sampled.size());
  for (u64 mask : sampled) items.emplace_back(subset_sum(inst, mask), mask);
  std::sort(items.begin(), items.end());
  if (m) m->sort_items += items.size();
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i - 1].first == items[i].first) {
      return solution_from_masks(inst, items[i - 1].second, items[i].second, items[i].first);
    }
  }
  return std::nullopt;
}

std::optional<SolutionPair> solve(const Instance& inst, u64 delta, u64 seed, u64 budget,
                                  Metrics* m, const std::atomic<bool>* stop) {
  const int n = inst.n;
  params(n, delta, 0);  // validate preconditions up front
  if (budget == 0) budget = kDefaultBudgetFactor * static_cast<u64>(n) * n;

  u64 done = 0;
  for (u64 round = 0; done < budget; ++round) {
    bool any_feasible = false;
    for (int j = 0; j < n && done < budget; ++j) {
      if (stop && stop->load(std::memory_order_relaxed)) return std::nullopt;
      const LargeDParams prm = params(n, delta, j);
      if ((static_cast<u64>(n) + 1) * 2 * prm.P > kMaxDpCells) continue;  // DP would not fit
      any_feasible = true;
      ++done;
      if (m) ++m->attempts;
      std::mt19937_64 rng(derive_seed(seed, static_cast<u64>(j), round));
      if (auto sol = attempt(inst, prm, rng, m)) return sol;
    }
    if (!any_feasible) break;
  }
  return std::nullopt;
}

}  // namespace pigeonsum::larged
