#pragma once

#include <optional>
#include <string>

#include "pigeonsum/lowspace.hpp"

namespace pigeonsum::dispatch {

enum class Mode { Auto, Baseline, SmallD, LargeD, LowSpace };

struct SolveConfig {
  Mode mode = Mode::Auto;
  std::optional<u64> delta_override;
  u64 seed = 0;
  u64 budget = 0;  // 0 = solver default
  bool race = false;
  std::optional<u64> time_limit_ms;  // caps the randomized phase only
};

enum class Status { Solved, StructureViolated, BudgetExhausted };

struct Outcome {
  Status status = Status::Solved;
  std::optional<SolutionPair> solution;
  Metrics metrics;
  std::string algo;  // which branch produced the result
  std::optional<smalld::StructureReport> report;
  double wall_ms = 0.0;
};

/// The schedule delta 2^{ceil(0.8 n)} clamped into
/// [ceil(2^{n/2}), floor(2^n / (3 n^2))], or nullopt when that interval is
/// empty (small n), in which case the dispatcher goes straight to baseline.
std::optional<u64> schedule_delta(int n);

/// Forced-mode entry point for tests and benchmarks. Duplicate inputs
/// short-circuit in every mode. Validation errors propagate as Error.
Outcome solve_with(const RawInput& raw, const SolveConfig& cfg);

/// Combined solver: validate (duplicate short-circuit), prefix-reduce, pick
/// delta, then structure check -> deterministic small-d solve on pass,
/// randomized subsampling on violation, baseline bisection as fallback.
/// Always returns a pair verified against the raw input.
SolutionPair solve_auto(const RawInput& raw, const SolveConfig& cfg = {});

const char* mode_to_string(Mode m);
Mode mode_from_string(const std::string& s);

}  // namespace pigeonsum::dispatch
