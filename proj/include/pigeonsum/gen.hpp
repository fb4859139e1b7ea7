#pragma once

#include "pigeonsum/instance.hpp"

namespace pigeonsum::gen {

enum class Kind { Random, NearBinary, Dense, Duplicate };

struct GenSpec {
  Kind kind = Kind::Random;
  int n = 0;
  u64 seed = 0;
};

/// Deterministic per (kind, n, seed).
///   random      n distinct uniform values <= (2^n - 2)/n; typically large d.
///   near-binary w_i = 2^{i-1} except w_n = 2^{n-1} - 1; d = 1.
///   dense       n distinct values <= n^3 (range shrunk at small n to keep
///               the promise); nearly all of [0, 2^n) misses the sumset.
///   duplicate   contains an equal pair, for the validation short-circuit.
/// Every kind except duplicate passes validation by construction. Throws
/// Errc::unsatisfiable when no valid instance of the kind exists (n < 3, or
/// n < 2 for duplicate).
RawInput generate(const GenSpec& spec);

Kind kind_from_string(const std::string& s);
const char* kind_to_string(Kind k);

}  // namespace pigeonsum::gen
