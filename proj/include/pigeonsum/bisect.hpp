#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pigeonsum/instance.hpp"

namespace pigeonsum::bisect {

/// Exact prefix counter: t -> #{S : w(S) <= t}; must return 0 for t < 0.
using CountFn = std::function<u64(i64)>;

/// t -> up to `limit` subset masks with w(S) = t.
using ListFn = std::function<std::vector<u64>(u64, std::size_t)>;

using Trace = std::vector<std::pair<u64, u64>>;

/// Halving search over [0, 2^n - 2] maintaining the pigeonhole invariant
/// r - l + 1 < #{S : l <= w(S) <= r}. Keeps whichever half satisfies the
/// strict inequality, preferring the lower one. Returns the sum l = r with
/// f_l >= 2 after at most n steps. Throws Errc::invariant_broken if the
/// counts are inconsistent (i.e. count_fn is not exact).
u64 run(const Instance& inst, const CountFn& count_fn, Trace* trace = nullptr);

/// Two distinct subsets of sum `target` from the lister, lifted to original
/// indices.
SolutionPair extract(const Instance& inst, u64 target, const ListFn& list_fn);

}  // namespace pigeonsum::bisect
