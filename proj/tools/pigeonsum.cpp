#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pigeonsum/dispatch.hpp"
#include "pigeonsum/gen.hpp"
#include "pigeonsum/oracle.hpp"

using namespace pigeonsum;
using nlohmann::json;

namespace {

constexpr int kExitInvalidInput = 2;
constexpr int kExitNoSolution = 3;

u64 default_seed() {
  if (const char* env = std::getenv("PIGEONSUM_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

RawInput load_input(const std::string& path) {
  if (path == "-") return read_instance_text(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_format, "cannot open " + path);
  return read_instance_text(in);
}

json metrics_json(const dispatch::Outcome& out) {
  return json{{"algo", out.algo},
              {"attempts", out.metrics.attempts},
              {"subsets_enumerated", out.metrics.subsets_enumerated},
              {"dp_cells", out.metrics.dp_cells},
              {"samples_drawn", out.metrics.samples_drawn},
              {"wall_ms", out.wall_ms}};
}

// Parse "4-18" or "8,12,16" into a list of sizes.
std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  auto dash = s.find('-');
  if (dash != std::string::npos && dash > 0) {
    int lo = std::stoi(s.substr(0, dash));
    int hi = std::stoi(s.substr(dash + 1));
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw Error(Errc::bad_format, "empty size list");
  return out;
}

struct BenchRow {
  std::string kind;
  int n;
  u64 seed;
  std::string algo;
  u64 delta;
  dispatch::Outcome outcome;
};

void write_bench_row(std::ostream& os, const BenchRow& row) {
  const auto& m = row.outcome.metrics;
  os << row.kind << ',' << row.n << ',' << row.seed << ',' << row.algo << ',' << row.delta << ','
     << (row.outcome.solution ? 1 : 0) << ',' << row.outcome.wall_ms << ','
     << m.subsets_enumerated << ',' << m.dp_cells << ',' << m.samples_drawn << ',' << m.attempts
     << '\n';
}

dispatch::Outcome bench_solve(const RawInput& raw, dispatch::Mode mode, std::optional<u64> delta,
                              u64 seed) {
  dispatch::SolveConfig cfg;
  cfg.mode = mode;
  cfg.delta_override = delta;
  cfg.seed = seed;
  return dispatch::solve_with(raw, cfg);
}

// Delta that pins the small-d split at ceil(0.8 n); legal at every n >= 8.
u64 scaling_delta(int n) {
  const int target = std::min((4 * n + 4) / 5, n);
  const u64 d = pow2(target) / (3ull * n * n);
  return std::max<u64>(d, 1);
}

int cmd_bench(const std::string& suite, const std::string& sizes, u64 seeds, u64 seed0,
              const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw Error(Errc::bad_format, "cannot open " + out_path);
  out << "kind,n,seed,algo,delta,success,wall_ms,subsets_enumerated,dp_cells,samples_drawn,"
         "attempts\n";

  const std::vector<int> ns = parse_sizes(sizes);
  auto emit = [&](gen::Kind kind, int n, u64 seed, dispatch::Mode mode, std::optional<u64> delta) {
    RawInput raw = gen::generate({kind, n, seed});
    BenchRow row;
    row.kind = gen::kind_to_string(kind);
    row.n = n;
    row.seed = seed;
    row.algo = dispatch::mode_to_string(mode);
    row.delta = delta.value_or(0);
    try {
      row.outcome = bench_solve(raw, mode, delta, seed);
    } catch (const Error&) {
      row.outcome.solution.reset();
    }
    write_bench_row(out, row);
  };

  if (suite == "scaling") {
    for (int n : ns) {
      for (u64 s = 0; s < seeds; ++s) {
        const u64 seed = seed0 + s;
        emit(gen::Kind::NearBinary, n, seed, dispatch::Mode::SmallD, scaling_delta(n));
        emit(gen::Kind::NearBinary, n, seed, dispatch::Mode::Baseline, std::nullopt);
      }
    }
  } else if (suite == "regimes") {
    for (int n : ns) {
      for (u64 s = 0; s < seeds; ++s) {
        const u64 seed = seed0 + s;
        for (gen::Kind kind : {gen::Kind::Random, gen::Kind::NearBinary, gen::Kind::Dense}) {
          emit(kind, n, seed, dispatch::Mode::Auto, std::nullopt);
          emit(kind, n, seed, dispatch::Mode::Baseline, std::nullopt);
          emit(kind, n, seed, dispatch::Mode::LowSpace, std::nullopt);
          if (kind != gen::Kind::NearBinary) {
            // delta fitted to the prefix the solver will actually run on
            RawInput raw = gen::generate({kind, n, seed});
            auto vr = validate(raw);
            if (auto* inst = std::get_if<Instance>(&vr)) {
              const Instance red = prefix_reduce(*inst);
              if (red.n >= 3) {
                emit(kind, n, seed, dispatch::Mode::LargeD, pow2((red.n + 1) / 2));
              }
            }
          }
        }
      }
    }
  } else {
    throw Error(Errc::bad_format, "unknown suite: " + suite + " (try scaling|regimes)");
  }
  return 0;
}

int cmd_stats(const std::string& path) {
  RawInput raw = load_input(path);
  ValidateResult vr = validate(raw);
  if (std::holds_alternative<SolutionPair>(vr))
    throw Error(Errc::bad_format, "stats needs a duplicate-free instance");
  const Instance inst = std::get<Instance>(vr);
  if (inst.n > 24) throw Error(Errc::instance_too_large, "stats limited to n <= 24");

  const auto ft = oracle::frequencies(inst);
  const u64 ds = oracle::d_by_surplus(ft);
  const u64 dz = oracle::d_by_zeros(ft);
  if (ds != dz) throw Error(Errc::internal, "surplus/zero counts disagree");

  u64 max_ft = 0;
  for (const auto& [t, f] : ft.freq) max_ft = std::max(max_ft, f);

  json j{{"n", inst.n}, {"total", inst.total}, {"d_surplus", ds}, {"d_zeros", dz},
         {"max_ft", max_ft}};
  j["witness_j"] = nullptr;
  if (ds >= 1) j["witness_j"] = oracle::witness_j(ft, ds);
  json ok_at = json::array();
  for (u64 delta = 1; (u128)3 * inst.n * inst.n * delta <= (u128{1} << inst.n); delta *= 2) {
    if (smalld::check_structure(inst, delta).ok) ok_at.push_back(delta);
  }
  j["structure_ok_at"] = ok_at;
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equal-sum subset pair solver suite"};
  app.require_subcommand(1);

  // solve
  std::string solve_path = "-";
  std::string algo = "auto";
  u64 seed = default_seed();
  u64 budget = 0;
  std::optional<u64> delta;
  bool race = false;
  bool as_json = false;
  u64 delta_flag = 0;
  auto* solve_cmd = app.add_subcommand("solve", "find two subsets with equal sums");
  solve_cmd->add_option("input", solve_path, "instance file, or - for stdin");
  solve_cmd->add_option("--algo", algo, "auto|baseline|small-d|large-d|lowspace");
  solve_cmd->add_option("--delta", delta_flag, "structural parameter override");
  solve_cmd->add_option("--seed", seed, "randomized solver seed");
  solve_cmd->add_option("--budget", budget, "attempt cap for the randomized solver");
  solve_cmd->add_flag("--race", race, "race the deterministic and randomized branches");
  solve_cmd->add_flag("--json", as_json, "single JSON object output");

  // stats
  std::string stats_path = "-";
  auto* stats_cmd = app.add_subcommand("stats", "exact frequency statistics (n <= 24)");
  stats_cmd->add_option("input", stats_path, "instance file, or - for stdin");

  // gen
  std::string kind_str = "random";
  int gen_n = 16;
  u64 gen_seed = default_seed();
  std::string gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--kind", kind_str, "random|near-binary|dense|duplicate")->required();
  gen_cmd->add_option("--n", gen_n, "instance size")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "output file, or - for stdout");

  // bench
  std::string suite = "regimes";
  std::string sizes = "8-16";
  u64 bench_seeds = 1;
  u64 bench_seed0 = default_seed();
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite to CSV");
  bench_cmd->add_option("--suite", suite, "scaling|regimes");
  bench_cmd->add_option("--n", sizes, "sizes, e.g. 24,28,32 or 4-18");
  bench_cmd->add_option("--seeds", bench_seeds, "seeds per configuration");
  bench_cmd->add_option("--seed0", bench_seed0, "first seed");
  bench_cmd->add_option("--out", bench_out, "CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      if (solve_cmd->count("--delta")) delta = delta_flag;
      dispatch::SolveConfig cfg;
      cfg.mode = dispatch::mode_from_string(algo);
      cfg.delta_override = delta;
      cfg.seed = seed;
      cfg.budget = budget;
      cfg.race = race;
      RawInput raw = load_input(solve_path);
      dispatch::Outcome out = dispatch::solve_with(raw, cfg);
      if (!out.solution) {
        json info{{"status", out.status == dispatch::Status::StructureViolated
                                 ? "structure-violated"
                                 : "budget-exhausted"},
                  {"metrics", metrics_json(out)}};
        std::cerr << info.dump() << '\n';
        return kExitNoSolution;
      }
      if (as_json) {
        json j{{"solution", json::parse(solution_to_json(*out.solution))},
               {"metrics", metrics_json(out)}};
        std::cout << j.dump() << '\n';
      } else {
        std::cout << solution_to_json(*out.solution) << '\n'
                  << metrics_json(out).dump() << '\n';
      }
      return 0;
    }
    if (stats_cmd->parsed()) return cmd_stats(stats_path);
    if (gen_cmd->parsed()) {
      RawInput raw = gen::generate({gen::kind_from_string(kind_str), gen_n, gen_seed});
      if (gen_out == "-") {
        write_instance_text(std::cout, raw);
      } else {
        std::ofstream f(gen_out);
        if (!f) throw Error(Errc::bad_format, "cannot open " + gen_out);
        write_instance_text(f, raw);
      }
      return 0;
    }
    if (bench_cmd->parsed()) return cmd_bench(suite, sizes, bench_seeds, bench_seed0, bench_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::invariant_broken:
      case Errc::internal:
        return 1;
      default:
        return kExitInvalidInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
