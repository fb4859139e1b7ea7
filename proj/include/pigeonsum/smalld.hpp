#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pigeonsum/mim.hpp"

namespace pigeonsum::smalld {

/// Result of the per-element window check w_i - 2^{i-1} in [-i*delta, delta].
/// When the check passes, `split` is the smallest i with 2^i >= 3 n^2 delta;
/// the low elements A = {1..split} are handled by meet-in-middle and the high
/// elements B = {split+1..n} behave like powers of two.
struct StructureReport {
  u64 delta = 0;
  bool ok = false;
  std::optional<int> first_violation;  // 1-based element index
  int split = 0;                       // valid when ok
};

/// Legal delta range is 1 <= delta <= 2^n / (3 n^2); throws
/// Errc::delta_out_of_range outside it. A failing check certifies d > delta;
/// a passing check is sufficient for the fast counting query to be exact.
StructureReport check_structure(const Instance& inst, u64 delta);

/// A decoded high-part candidate: subset of B as an instance mask, its true
/// weight, and its power-of-two value sum_{j in B'} 2^{j-1}.
struct BprimeCandidate {
  u64 mask;
  u64 weight;
  u64 bin_value;
};

/// All B' whose power-of-two value can place w(S) at exactly t for some
/// A-part, i.e. bin value in [t - w(A) - n^2 delta, t + n^2 delta]. At most
/// three multiples of 2^split fit.
std::vector<BprimeCandidate> candidate_bprimes(const Instance& inst, const StructureReport& rep,
                                               u64 t);

/// Closed-form contribution of the far-below high parts to #{S : w(S) <= T}:
/// each B' with bin value <= T - 2^split - (n + n^2) delta admits every
/// A-part, 2^|A| pairs apiece.
u64 case1_count(const Instance& inst, const StructureReport& rep, u64 T);

/// The borderline high parts of a <=-count query at T; at most two multiples
/// of 2^split fit the window (checked at runtime). Each one needs an exact
/// count of #{A' : w(A') <= T - w(B')}.
std::vector<BprimeCandidate> case3_candidates(const Instance& inst, const StructureReport& rep,
                                              u64 T);

/// Exact #{S : w(S) <= T} for 0 <= T < 2^n using the case split on the high
/// part: far-below candidates contribute 2^|A| each in closed form, far-above
/// contribute nothing, and at most two borderline candidates are resolved by
/// meet-in-middle over A. Builds the A tables internally; use Query to reuse
/// them across many T.
u64 count_le_fast(const Instance& inst, const StructureReport& rep, u64 T, Metrics* m = nullptr);

/// Up to `limit` subsets with w(S) = t, grouped by candidate B' ascending,
/// each group in meet-in-middle listing order.
std::vector<u64> list_eq_fast(const Instance& inst, const StructureReport& rep, u64 t,
                              std::size_t limit, Metrics* m = nullptr);

/// Reusable query context holding the meet-in-middle tables over A.
class Query {
public:
  Query(const Instance& inst, const StructureReport& rep, Metrics* m = nullptr);

  u64 count_le(u64 T) const;
  std::vector<u64> list_eq(u64 t, std::size_t limit) const;

private:
  const Instance& inst_;
  StructureReport rep_;
  mim::HalfTables tables_a_;
  Metrics* metrics_;
};

using SolveResult = std::variant<SolutionPair, StructureReport>;

/// Deterministic solver: prefix reduction, structure check, then the halving
/// search driven by the fast counting query. Returns the failing report (a
/// certificate that d > delta) when the structure check fails.
SolveResult solve(const Instance& inst, u64 delta, Metrics* m = nullptr);

}  // namespace pigeonsum::smalld
