#include "pigeonsum/bisect.hpp"

namespace pigeonsum::bisect {

u64 run(const Instance& inst, const CountFn& count_fn, Trace* trace) {
  u64 lo = 0;
  u64 hi = pow2(inst.n) - 2;
  u64 cnt_below_lo = count_fn(-1);  // #{S : w(S) < lo}
  u64 cnt_le_hi = count_fn(static_cast<i64>(hi));
  auto invariant_holds = [&] { return hi - lo + 1 < cnt_le_hi - cnt_below_lo; };
  if (cnt_below_lo != 0 || !invariant_holds())
    throw Error(Errc::invariant_broken, "initial interval violates the pigeonhole invariant");
  if (trace) trace->push_back({lo, hi});

  int steps = 0;
  while (lo < hi) {
    if (++steps > inst.n)
      throw Error(Errc::invariant_broken, "halving did not converge within n steps");
    const u64 mid = lo + (hi - lo) / 2;
    const u64 cnt_le_mid = count_fn(static_cast<i64>(mid));
    const u64 c1 = cnt_le_mid - cnt_below_lo;
    const u64 c2 = cnt_le_hi - cnt_le_mid;
    if (mid - lo + 1 < c1) {  // prefer the lower half when both qualify
      hi = mid;
      cnt_le_hi = cnt_le_mid;
    } else if (hi - mid < c2) {
      lo = mid + 1;
      cnt_below_lo = cnt_le_mid;
    } else {
      throw Error(Errc::invariant_broken, "neither half preserves the invariant");
    }
    if (!invariant_holds())
      throw Error(Errc::invariant_broken, "chosen half violates the invariant");
    if (trace) trace->push_back({lo, hi});
  }
  return lo;
}

SolutionPair extract(const Instance& inst, u64 target, const ListFn& list_fn) {
  auto subsets = list_fn(target, 2);
  if (subsets.size() < 2)
    throw Error(Errc::invariant_broken, "target sum does not have two subsets");
  return solution_from_masks(inst, subsets[0], subsets[1], target);
}

}  // namespace pigeonsum::bisect
