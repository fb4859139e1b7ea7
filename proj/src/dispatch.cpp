#include "pigeonsum/dispatch.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "pigeonsum/bisect.hpp"
#include "pigeonsum/larged.hpp"

namespace pigeonsum::dispatch {

namespace {

using Clock = std::chrono::steady_clock;

std::optional<u64> forced_larged_delta(int n) {
  // 2^{ceil(0.8 n)} pulled into [ceil(2^{n/2}), 2^n - 1].
  if (n < 3) return std::nullopt;
  const u64 lo = ceil_sqrt_u64(pow2(n));
  const u64 hi = pow2(n) - 1;
  const u64 sched = pow2(std::min((4 * n + 4) / 5, n));
  return std::clamp(sched, lo, hi);
}

bool larged_delta_legal(int n, u64 delta) {
  return n >= 3 && delta < pow2(n) && (u128)delta * delta >= (u128{1} << n);
}

struct BaselineRun {
  SolutionPair sol;
  Metrics metrics;
  const char* algo;
};

// Pigeonhole bisection over exact meet-in-middle counts; streamed counts when
// the instance is too wide for the tables.
BaselineRun run_baseline(const Instance& inst, const std::atomic<bool>* stop = nullptr) {
  BaselineRun out;
  if (inst.n <= mim::kMaxBuildBits) {
    out.algo = "baseline";
    const mim::HalfTables tables = mim::build(inst, mim::full_mask(inst), &out.metrics);
    const u64 target = bisect::run(inst, [&](i64 t) {
      if (stop && stop->load(std::memory_order_relaxed))
        throw Error(Errc::internal, "cancelled");
      return mim::count_le(tables, t);
    });
    out.sol = bisect::extract(
        inst, target, [&](u64 t, std::size_t lim) { return mim::list_eq(tables, t, lim); });
  } else {
    out.algo = "baseline-stream";
    out.sol = lowspace::solve_ps(inst, 0, &out.metrics);
  }
  return out;
}

Outcome finish(Outcome out, const RawInput& raw, Clock::time_point t0) {
  if (out.solution && !verify(raw, *out.solution))
    throw Error(Errc::invariant_broken, "solver output failed verification");
  out.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

Outcome run_race(const Instance& inst, u64 delta, const SolveConfig& cfg) {
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::optional<SolutionPair> winner;
  std::string winner_algo;
  Metrics merged;

  auto submit = [&](SolutionPair sol, const char* algo, const Metrics& m) {
    std::scoped_lock lock(mu);
    merged.merge(m);
    if (!winner) {
      winner = std::move(sol);
      winner_algo = algo;
      stop.store(true, std::memory_order_relaxed);
    }
  };
  auto submit_metrics = [&](const Metrics& m) {
    std::scoped_lock lock(mu);
    merged.merge(m);
  };

  std::thread deterministic([&] {
    Metrics m;
    try {
      auto res = smalld::solve(inst, delta, &m);
      if (auto* sol = std::get_if<SolutionPair>(&res)) {
        submit(std::move(*sol), "small-d", m);
        return;
      }
      auto base = run_baseline(inst, &stop);
      m.merge(base.metrics);
      submit(std::move(base.sol), base.algo, m);
    } catch (const Error&) {
      submit_metrics(m);  // cancelled or out of range; the other branch decides
    }
  });
  std::thread randomized([&] {
    Metrics m;
    try {
      if (auto sol = larged::solve(inst, delta, cfg.seed, cfg.budget, &m, &stop)) {
        submit(std::move(*sol), "large-d", m);
        return;
      }
      submit_metrics(m);
    } catch (const Error&) {
      submit_metrics(m);
    }
  });
  deterministic.join();
  randomized.join();

  Outcome out;
  if (!winner) {  // both branches bailed; the baseline is total
    auto base = run_baseline(inst);
    merged.merge(base.metrics);
    winner = std::move(base.sol);
    winner_algo = base.algo;
  }
  out.solution = winner;
  out.metrics = merged;
  out.algo = winner_algo;
  return out;
}

Outcome run_auto(const Instance& inst, const SolveConfig& cfg) {
  Outcome out;
  const std::optional<u64> delta =
      cfg.delta_override ? cfg.delta_override : schedule_delta(inst.n);
  if (!delta) {  // no legal window at this size: straight to baseline
    auto base = run_baseline(inst);
    out.solution = std::move(base.sol);
    out.metrics = base.metrics;
    out.algo = base.algo;
    return out;
  }
  if (cfg.race) return run_race(inst, *delta, cfg);

  // The structure check is linear, so try the deterministic branch first.
  try {
    auto res = smalld::solve(inst, *delta, &out.metrics);
    if (auto* sol = std::get_if<SolutionPair>(&res)) {
      out.solution = std::move(*sol);
      out.algo = "small-d";
      return out;
    }
    out.report = std::get<smalld::StructureReport>(res);  // certifies d > delta
  } catch (const Error& e) {
    // delta outside the window, or tables too wide at this delta: next branch
    if (e.code() == Errc::invariant_broken || e.code() == Errc::internal) throw;
  }

  if (larged_delta_legal(inst.n, *delta)) {
    u64 budget = cfg.budget;
    if (cfg.time_limit_ms && budget == 0) budget = larged::kDefaultBudgetFactor * inst.n * inst.n;
    std::atomic<bool> stop{false};
    std::optional<std::thread> timer;
    if (cfg.time_limit_ms) {
      timer.emplace([&] {
        const auto deadline = Clock::now() + std::chrono::milliseconds(*cfg.time_limit_ms);
        while (Clock::now() < deadline && !stop.load(std::memory_order_relaxed))
          std::this_thread::sleep_for(std::chrono::milliseconds(1));
        stop.store(true, std::memory_order_relaxed);
      });
    }
    auto sol = larged::solve(inst, *delta, cfg.seed, budget, &out.metrics, &stop);
    stop.store(true, std::memory_order_relaxed);
    if (timer) timer->join();
    if (sol) {
      out.solution = std::move(*sol);
      out.algo = "large-d";
      return out;
    }
  }

  auto base = run_baseline(inst);
  out.metrics.merge(base.metrics);
  out.solution = std::move(base.sol);
  out.algo = base.algo;
  return out;
}

}  // namespace

std::optional<u64> schedule_delta(int n) {
  if (n < 3) return std::nullopt;
  const u64 lo = ceil_sqrt_u64(pow2(n));
  const u64 hi = static_cast<u64>((u128{1} << n) / ((u128)3 * n * n));
  if (lo > hi) return std::nullopt;
  const u64 sched = pow2(std::min((4 * n + 4) / 5, n));
  return std::clamp(sched, lo, hi);
}

Outcome solve_with(const RawInput& raw, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  Outcome out;

  ValidateResult vr = validate(raw);
  if (auto* dup = std::get_if<SolutionPair>(&vr)) {
    out.solution = *dup;
    out.algo = "duplicate";
    return finish(std::move(out), raw, t0);
  }
  const Instance inst = prefix_reduce(std::get<Instance>(vr));

  switch (cfg.mode) {
    case Mode::Auto:
      out = run_auto(inst, cfg);
      break;
    case Mode::Baseline: {
      auto base = run_baseline(inst);
      out.solution = std::move(base.sol);
      out.metrics = base.metrics;
      out.algo = base.algo;
      break;
    }
    case Mode::SmallD: {
      u64 delta;
      if (cfg.delta_override) {
        delta = *cfg.delta_override;
      } else if (auto sched = schedule_delta(inst.n)) {
        delta = *sched;
      } else {
        throw Error(Errc::delta_out_of_range, "no legal delta at this size; pass --delta");
      }
      auto res = smalld::solve(inst, delta, &out.metrics);
      out.algo = "small-d";
      if (auto* sol = std::get_if<SolutionPair>(&res)) {
        out.solution = std::move(*sol);
      } else {
        out.status = Status::StructureViolated;
        out.report = std::get<smalld::StructureReport>(res);
      }
      break;
    }
    case Mode::LargeD: {
      u64 delta;
      if (cfg.delta_override) {
        delta = *cfg.delta_override;
      } else if (auto sched = forced_larged_delta(inst.n)) {
        delta = *sched;
      } else {
        throw Error(Errc::param_out_of_range, "instance too small for the subsampling solver");
      }
      out.algo = "large-d";
      if (auto sol = larged::solve(inst, delta, cfg.seed, cfg.budget, &out.metrics)) {
        out.solution = std::move(*sol);
      } else {
        out.status = Status::BudgetExhausted;
      }
      break;
    }
    case Mode::LowSpace: {
      out.algo = "lowspace";
      out.solution = lowspace::solve_ps(inst, cfg.seed, &out.metrics);
      break;
    }
  }
  return finish(std::move(out), raw, t0);
}

SolutionPair solve_auto(const RawInput& raw, const SolveConfig& cfg) {
  SolveConfig auto_cfg = cfg;
  auto_cfg.mode = Mode::Auto;
  Outcome out = solve_with(raw, auto_cfg);
  if (!out.solution) throw Error(Errc::internal, "auto mode must produce a solution");
  return *out.solution;
}

const char* mode_to_string(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Baseline: return "baseline";
    case Mode::SmallD: return "small-d";
    case Mode::LargeD: return "large-d";
    case Mode::LowSpace: return "lowspace";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "auto") return Mode::Auto;
  if (s == "baseline") return Mode::Baseline;
  if (s == "small-d") return Mode::SmallD;
  if (s == "large-d") return Mode::LargeD;
  if (s == "lowspace") return Mode::LowSpace;
  throw Error(Errc::bad_format, "unknown algorithm: " + s);
}

}  // namespace pigeonsum::dispatch
