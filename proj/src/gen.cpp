#include "pigeonsum/gen.hpp"

#include <algorithm>
#include <unordered_set>

namespace pigeonsum::gen {

namespace {

// n distinct uniform values in [1, hi], draw order, deterministic.
std::vector<i64> distinct_uniform(std::mt19937_64& rng, int n, u64 hi) {
  std::unordered_set<u64> seen;
  std::vector<i64> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    const u64 v = uniform_u64(rng, 1, hi);
    if (seen.insert(v).second) out.push_back(static_cast<i64>(v));
  }
  return out;
}

u64 value_cap(int n) { return (pow2(n) - 2) / static_cast<u64>(n); }

}  // namespace

RawInput generate(const GenSpec& spec) {
  const int n = spec.n;
  if (n < 2 || (spec.kind != Kind::Duplicate && n < 3))
    throw Error(Errc::unsatisfiable, "no valid instance of this kind at this size");
  if (n > 62) throw Error(Errc::too_large, "n > 62");

  std::mt19937_64 rng(derive_seed(spec.seed, static_cast<u64>(spec.kind), static_cast<u64>(n)));
  RawInput raw;

  switch (spec.kind) {
    case Kind::Random: {
      // Range widened to at least [1, n] so n distinct values always exist;
      // at the nominal cap the sum stays below 2^n - 1 by construction.
      const u64 hi = std::max<u64>(value_cap(n), static_cast<u64>(n));
      raw.values = distinct_uniform(rng, n, hi);
      break;
    }
    case Kind::NearBinary: {
      for (int i = 1; i < n; ++i) raw.values.push_back(static_cast<i64>(pow2(i - 1)));
      raw.values.push_back(static_cast<i64>(pow2(n - 1) - 1));
      break;
    }
    case Kind::Dense: {
      // Poly(n)-bounded values make nearly every residual sum unreachable.
      // The n^3 cap is shrunk at small n so the promise holds by construction.
      const u64 cube = static_cast<u64>(n) * n * n;
      const u64 hi = std::max<u64>(std::min(cube, value_cap(n)), static_cast<u64>(n));
      raw.values = distinct_uniform(rng, n, hi);
      break;
    }
    case Kind::Duplicate: {
      const u64 hi = std::max<u64>(value_cap(n), static_cast<u64>(n));
      raw.values = distinct_uniform(rng, n - 1, hi);
      const u64 pick = uniform_u64(rng, 0, raw.values.size() - 1);
      raw.values.push_back(raw.values[pick]);
      // Fisher-Yates with the portable uniform so output is seed-stable.
      for (std::size_t i = raw.values.size() - 1; i > 0; --i) {
        std::swap(raw.values[i], raw.values[uniform_u64(rng, 0, i)]);
      }
      return raw;
    }
  }

  // Validity by construction; the sum bound is re-checked defensively for the
  // widened small-n ranges.
  u64 total = 0;
  for (i64 v : raw.values) total += static_cast<u64>(v);
  if (total >= pow2(n) - 1) throw Error(Errc::internal, "generator produced an invalid instance");
  return raw;
}

Kind kind_from_string(const std::string& s) {
  if (s == "random") return Kind::Random;
  if (s == "near-binary") return Kind::NearBinary;
  if (s == "dense") return Kind::Dense;
  if (s == "duplicate") return Kind::Duplicate;
  throw Error(Errc::bad_format, "unknown kind: " + s);
}

const char* kind_to_string(Kind k) {
  switch (k) {
    case Kind::Random: return "random";
    case Kind::NearBinary: return "near-binary";
    case Kind::Dense: return "dense";
    case Kind::Duplicate: return "duplicate";
  }
  return "?";
}

}  // namespace pigeonsum::gen
