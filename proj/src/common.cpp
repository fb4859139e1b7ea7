#include "pigeonsum/common.hpp"

#include <cmath>

namespace pigeonsum {

bool is_prime_u64(u64 x) {
  if (x < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (x % p == 0) return x == p;
  }
  u64 d = x - 1;
  int s = std::countr_zero(d);
  d >>= s;
  // Deterministic witness set for the full 64-bit range.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 v = powmod_u64(a, d, x);
    if (v == 1 || v == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      v = mulmod_u64(v, v, x);
      if (v == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 ceil_sqrt_u64(u64 x) {
  if (x == 0) return 0;
  u64 s = static_cast<u64>(std::sqrt(static_cast<double>(x)));
  while (s > 0 && (u128)(s - 1) * (s - 1) >= x) --s;
  while ((u128)s * s < x) ++s;
  return s;
}

}  // namespace pigeonsum
