#include "pigeonsum/smalld.hpp"

#include <algorithm>

#include "pigeonsum/bisect.hpp"

namespace pigeonsum::smalld {

namespace {

i128 floor_div(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

void require_ok(const StructureReport& rep) {
  if (!rep.ok) throw Error(Errc::structure_required, "structure check did not pass");
}

}  // namespace

StructureReport check_structure(const Instance& inst, u64 delta) {
  const int n = inst.n;
  const u128 need = (u128)3 * n * n * delta;  // legal iff 3 n^2 delta <= 2^n
  if (delta < 1 || need > (u128{1} << n))
    throw Error(Errc::delta_out_of_range, "delta must satisfy 1 <= delta <= 2^n/(3n^2)");

  StructureReport rep;
  rep.delta = delta;
  rep.ok = true;
  for (int i = 1; i <= n; ++i) {
    const i128 dev = (i128)inst.weights[i - 1] - (i128)pow2(i - 1);
    if (dev < -(i128)i * delta || dev > (i128)delta) {
      rep.ok = false;
      rep.first_violation = i;
      return rep;
    }
  }
  int split = 1;
  while ((u128{1} << split) < need) ++split;
  rep.split = split;  // <= n by the delta guard
  return rep;
}

namespace {

struct Geometry {
  int n, split, nb;
  u64 s;        // 2^split
  u64 max_k;    // 2^nb possible high parts
  i128 nd;      // n * delta
  i128 n2d;     // n^2 * delta
  u64 w_a;      // exact w(A)

  Geometry(const Instance& inst, const StructureReport& rep) {
    n = inst.n;
    split = rep.split;
    nb = n - split;
    s = pow2(split);
    max_k = pow2(nb);
    nd = (i128)n * rep.delta;
    n2d = (i128)n * n * rep.delta;
    w_a = 0;
    for (int i = 0; i < split; ++i) w_a += inst.weights[i];
  }
};

u64 count_with_tables(const Instance& inst, const StructureReport& rep,
                      const mim::HalfTables& tables_a, u64 T) {
  u64 cnt = case1_count(inst, rep, T);
  for (const BprimeCandidate& cand : case3_candidates(inst, rep, T)) {
    cnt += mim::count_le(tables_a, (i64)T - (i64)cand.weight);
  }
  return cnt;
}

std::vector<u64> list_with_tables(const Instance& inst, const StructureReport& rep,
                                  const mim::HalfTables& tables_a, u64 t, std::size_t limit) {
  std::vector<u64> out;
  if (limit == 0) return out;
  const Geometry g(inst, rep);
  for (const BprimeCandidate& cand : candidate_bprimes(inst, rep, t)) {
    if (cand.weight > t || t - cand.weight > g.w_a) continue;
    for (u64 amask : mim::list_eq(tables_a, (i64)(t - cand.weight), limit - out.size())) {
      out.push_back(amask | cand.mask);
    }
    if (out.size() == limit) break;
  }
  return out;
}

}  // namespace

u64 case1_count(const Instance& inst, const StructureReport& rep, u64 T) {
  require_ok(rep);
  if (T >= pow2(inst.n)) throw Error(Errc::param_out_of_range, "T must be < 2^n");
  const Geometry g(inst, rep);
  // Every A' fits under T once bin(B') <= T - 2^split - (n + n^2) delta.
  const i128 x1 = (i128)T - (i128)g.s - g.nd - g.n2d;
  if (x1 < 0) return 0;
  const u64 k1 = static_cast<u64>(std::min<i128>(x1 / (i128)g.s + 1, (i128)g.max_k));
  return k1 << g.split;  // k1 * 2^|A|
}

std::vector<BprimeCandidate> case3_candidates(const Instance& inst, const StructureReport& rep,
                                              u64 T) {
  require_ok(rep);
  if (T >= pow2(inst.n)) throw Error(Errc::param_out_of_range, "T must be < 2^n");
  const Geometry g(inst, rep);
  // The high elements are within n^2 delta of powers of two, so the value
  // sum_{j in B'} 2^{j-1} equals the mask itself: candidates are k * 2^split
  // inside (T - 2^split - (n + n^2) delta, T + n^2 delta].
  const i128 x1 = (i128)T - (i128)g.s - g.nd - g.n2d;
  const i128 a = (i128)T - g.nd - g.n2d;
  if (floor_div((i128)T + g.n2d, (i128)g.s) > floor_div(a, (i128)g.s) + 1)
    throw Error(Errc::invariant_broken, "more than two borderline candidates");
  const i128 k0 = floor_div(a, (i128)g.s);
  std::vector<BprimeCandidate> cands;
  for (i128 k : {k0, k0 + 1}) {
    if (k < 0 || k >= (i128)g.max_k) continue;
    const i128 bin = k * (i128)g.s;
    if (bin <= x1) continue;              // counted in closed form
    if (bin > (i128)T + g.n2d) continue;  // contributes nothing
    const u64 bmask = static_cast<u64>(k) << g.split;
    cands.push_back({bmask, subset_sum(inst, bmask), bmask});
  }
  return cands;
}

std::vector<BprimeCandidate> candidate_bprimes(const Instance& inst, const StructureReport& rep,
                                               u64 t) {
  require_ok(rep);
  const Geometry g(inst, rep);
  // Any B' usable for exact sum t has w(B') in [t - w(A), t], hence bin value
  // within n^2 delta of that window.
  const i128 lo = (i128)t - (i128)g.w_a - g.n2d;
  const i128 hi = (i128)t + g.n2d;
  const i128 kmin = std::max<i128>(ceil_div(lo, (i128)g.s), 0);
  const i128 kmax = std::min<i128>(floor_div(hi, (i128)g.s), (i128)g.max_k - 1);
  std::vector<BprimeCandidate> cands;
  for (i128 k = kmin; k <= kmax; ++k) {
    const u64 bmask = static_cast<u64>(k) << g.split;
    cands.push_back({bmask, subset_sum(inst, bmask), bmask});
  }
  if (cands.size() > 3)
    throw Error(Errc::invariant_broken, "listing window admits more than three candidates");
  return cands;
}

Query::Query(const Instance& inst, const StructureReport& rep, Metrics* m)
    : inst_(inst), rep_(rep), metrics_(m) {
  require_ok(rep);
  tables_a_ = mim::build(inst, pow2(rep.split) - 1, m);
}

u64 Query::count_le(u64 T) const { return count_with_tables(inst_, rep_, tables_a_, T); }

std::vector<u64> Query::list_eq(u64 t, std::size_t limit) const {
  return list_with_tables(inst_, rep_, tables_a_, t, limit);
}

u64 count_le_fast(const Instance& inst, const StructureReport& rep, u64 T, Metrics* m) {
  require_ok(rep);
  auto tables = mim::build(inst, pow2(rep.split) - 1, m);
  return count_with_tables(inst, rep, tables, T);
}

std::vector<u64> list_eq_fast(const Instance& inst, const StructureReport& rep, u64 t,
                              std::size_t limit, Metrics* m) {
  require_ok(rep);
  auto tables = mim::build(inst, pow2(rep.split) - 1, m);
  return list_with_tables(inst, rep, tables, t, limit);
}

SolveResult solve(const Instance& inst0, u64 delta, Metrics* m) {
  const Instance inst = prefix_reduce(inst0);
  StructureReport rep = check_structure(inst, delta);
  if (!rep.ok) return rep;
  Query query(inst, rep, m);
  const u64 target = bisect::run(
      inst, [&](i64 t) -> u64 { return t < 0 ? 0 : query.count_le(static_cast<u64>(t)); });
  return bisect::extract(inst, target,
                         [&](u64 t, std::size_t lim) { return query.list_eq(t, lim); });
}

}  // namespace pigeonsum::smalld
