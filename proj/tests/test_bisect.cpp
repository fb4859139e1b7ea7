#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pigeonsum/bisect.hpp"
#include "pigeonsum/gen.hpp"
#include "pigeonsum/mim.hpp"
#include "pigeonsum/oracle.hpp"
#include "test_util.hpp"

using namespace pigeonsum;

namespace {

bisect::CountFn oracle_count(const Instance& inst) {
  return [&inst](i64 t) { return oracle::count_at_most(inst, t); };
}

}  // namespace

TEST_CASE("trace on (1,2,3)") {
  auto inst = tu::mk({1, 2, 3});
  bisect::Trace trace;
  const u64 target = bisect::run(inst, oracle_count(inst), &trace);
  CHECK(target == 3);
  bisect::Trace want{{0, 6}, {0, 3}, {2, 3}, {3, 3}};
  CHECK(trace == want);
}

TEST_CASE("unique duplicated sum on (1,2,4,7)") {
  auto inst = tu::mk({1, 2, 4, 7});
  CHECK(bisect::run(inst, oracle_count(inst)) == 7);
}

TEST_CASE("deterministic pick on (1,2,3,4)") {
  auto inst = tu::mk({1, 2, 3, 4});
  const u64 target = bisect::run(inst, oracle_count(inst));
  CHECK(target == 3);  // frozen trace: [0,14]->[0,7]->[0,3]->[2,3]->[3,3]
  auto ft = oracle::frequencies(inst);
  CHECK(ft.at(target) >= 2);
}

TEST_CASE("final value always has multiplicity at least two") {
  for (int n : {6, 9, 12}) {
    for (u64 seed = 0; seed < 5; ++seed) {
      for (auto kind : {gen::Kind::Random, gen::Kind::Dense, gen::Kind::NearBinary}) {
        auto inst = std::get<Instance>(validate(gen::generate({kind, n, seed})));
        bisect::Trace trace;
        const u64 target = bisect::run(inst, oracle_count(inst), &trace);
        const u64 f = oracle::count_at_most(inst, static_cast<i64>(target)) -
                      oracle::count_at_most(inst, static_cast<i64>(target) - 1);
        CHECK(f >= 2);
        CHECK(trace.size() <= static_cast<std::size_t>(inst.n) + 1);  // <= n halvings
        for (auto [lo, hi] : trace) {
          const u64 inside = oracle::count_at_most(inst, static_cast<i64>(hi)) -
                             oracle::count_at_most(inst, static_cast<i64>(lo) - 1);
          CHECK(hi - lo + 1 < inside);  // invariant preserved at every step
        }
      }
    }
  }
}

TEST_CASE("an inexact counter is detected") {
  auto inst = tu::mk({1, 2, 3});
  auto broken = [&inst](i64 t) -> u64 {
    u64 c = oracle::count_at_most(inst, t);
    return t >= 3 && c > 2 ? c - 2 : c;  // undercount the upper range
  };
  CHECK_THROWS_AS(bisect::run(inst, broken), Error);
}

TEST_CASE("extract pairs through meet-in-middle listing") {
  auto inst = tu::mk({1, 2, 4, 7});
  auto ht = mim::build(inst, mim::full_mask(inst));
  auto sol = bisect::extract(
      inst, 7, [&](u64 t, std::size_t lim) { return mim::list_eq(ht, static_cast<i64>(t), lim); });
  CHECK(sol.a == std::vector<int>{4});
  CHECK(sol.b == std::vector<int>{1, 2, 3});
  CHECK(sol.sum == 7);
}

TEST_CASE("extract demands two subsets") {
  auto inst = tu::mk({1, 2, 4, 7});
  auto ht = mim::build(inst, mim::full_mask(inst));
  CHECK_THROWS_AS(bisect::extract(inst, 6,
                                  [&](u64 t, std::size_t lim) {
                                    return mim::list_eq(ht, static_cast<i64>(t), lim);
                                  }),
                  Error);
}
