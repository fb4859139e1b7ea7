#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "pigeonsum/gen.hpp"
#include "pigeonsum/mim.hpp"
#include "pigeonsum/oracle.hpp"
#include "test_util.hpp"

using namespace pigeonsum;

namespace {

// Reference listing: all subsets with w(S) = t ordered by
// (sum of the low half, low mask, high mask), straight enumeration.
std::vector<u64> brute_list_eq(const Instance& inst, u64 set_mask, u64 t) {
  std::vector<int> idx;
  for (u64 rest = set_mask; rest; rest &= rest - 1) idx.push_back(std::countr_zero(rest));
  const std::size_t half = idx.size() / 2;
  u64 low_mask = 0;
  for (std::size_t i = 0; i < half; ++i) low_mask |= u64{1} << idx[i];

  struct Item {
    u64 wx, mx, my, mask;
  };
  std::vector<Item> items;
  const u64 end = pow2(static_cast<int>(idx.size()));
  for (u64 c = 0; c < end; ++c) {
    u64 mask = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (c >> i & 1) mask |= u64{1} << idx[i];
    if (subset_sum(inst, mask) != t) continue;
    items.push_back({subset_sum(inst, mask & low_mask), mask & low_mask, mask & ~low_mask, mask});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.wx, a.mx, a.my) < std::tie(b.wx, b.mx, b.my);
  });
  std::vector<u64> out;
  for (auto& it : items) out.push_back(it.mask);
  return out;
}

}  // namespace

TEST_CASE("half tables have the right shape") {
  auto inst = tu::mk({1, 2, 4, 7, 13});
  auto ht = mim::build(inst, mim::full_mask(inst));
  CHECK(ht.left.size() == pow2(5 / 2));
  CHECK(ht.right.size() == pow2(5 - 5 / 2));
  CHECK(std::is_sorted(ht.left.begin(), ht.left.end()));
  CHECK(std::is_sorted(ht.right.begin(), ht.right.end()));
}

TEST_CASE("build refuses oversized sets") {
  std::vector<u64> w;
  for (int i = 0; i < 53; ++i) w.push_back(pow2(0) + i);  // 1..53
  auto inst = tu::mk(w);
  CHECK_THROWS_AS(mim::build(inst, (u64{1} << 53) - 1), Error);
}

TEST_CASE("count_le examples") {
  auto i1 = tu::mk({1, 2, 4, 7});
  auto h1 = mim::build(i1, mim::full_mask(i1));
  CHECK(mim::count_le(h1, 7) == 9);
  CHECK(mim::count_le(h1, -1) == 0);

  auto i2 = tu::mk({1, 2, 3});
  auto h2 = mim::build(i2, mim::full_mask(i2));
  CHECK(mim::count_le(h2, 3) == 5);
}

TEST_CASE("count_le matches the oracle everywhere") {
  std::mt19937_64 rng(3);
  for (int n : {6, 9, 12, 15}) {
    for (u64 seed = 0; seed < 3; ++seed) {
      for (auto kind : {gen::Kind::Random, gen::Kind::Dense, gen::Kind::NearBinary}) {
        auto inst = std::get<Instance>(validate(gen::generate({kind, n, seed})));
        auto ht = mim::build(inst, mim::full_mask(inst));
        for (int q = 0; q < 60; ++q) {
          const i64 t = static_cast<i64>(uniform_u64(rng, 0, pow2(n) - 1)) - 1;
          CHECK(mim::count_le(ht, t) == oracle::count_at_most(inst, t));
        }
      }
    }
  }
}

TEST_CASE("count_le works on proper index subsets") {
  auto inst = tu::mk({1, 2, 4, 7, 13, 21});
  const u64 sub = 0b010111;  // elements {1,2,3,5}
  auto ht = mim::build(inst, sub);
  // direct enumeration over the 16 subsets of {1,2,4,13}
  for (i64 t = -1; t <= 21; ++t) {
    u64 want = 0;
    for (u64 c = 0; c < 16; ++c) {
      u64 mask = (c & 1 ? 1 : 0) | (c & 2 ? 2 : 0) | (c & 4 ? 4 : 0) | (c & 8 ? 16 : 0);
      if (t >= 0 && subset_sum(inst, mask) <= static_cast<u64>(t)) ++want;
    }
    CHECK(mim::count_le(ht, t) == want);
  }
}

TEST_CASE("list_eq examples") {
  auto i1 = tu::mk({1, 2, 4, 7});
  auto h1 = mim::build(i1, mim::full_mask(i1));
  auto got = mim::list_eq(h1, 7, 2);
  REQUIRE(got.size() == 2);
  CHECK(got[0] == 0b1000);  // {4} walks out first: empty left part
  CHECK(got[1] == 0b0111);  // {1,2,3}

  auto i2 = tu::mk({1, 2, 3});
  auto h2 = mim::build(i2, mim::full_mask(i2));
  CHECK(mim::list_eq(h2, 0, 5) == std::vector<u64>{0});
  CHECK(mim::list_eq(h2, 7, 1).empty());
}

TEST_CASE("list_eq equals count differences and respects order") {
  for (int n : {8, 11, 13}) {
    for (u64 seed = 0; seed < 3; ++seed) {
      auto inst = std::get<Instance>(validate(gen::generate({gen::Kind::Dense, n, seed})));
      auto ht = mim::build(inst, mim::full_mask(inst));
      for (u64 t = 0; t <= inst.total; t += 7) {
        auto all = mim::list_eq(ht, static_cast<i64>(t), SIZE_MAX);
        CHECK(all.size() == mim::count_le(ht, static_cast<i64>(t)) -
                                mim::count_le(ht, static_cast<i64>(t) - 1));
        for (u64 mask : all) CHECK(subset_sum(inst, mask) == t);
        CHECK(all == brute_list_eq(inst, mim::full_mask(inst), t));
      }
    }
  }
}

TEST_CASE("list_eq honors the limit") {
  auto inst = std::get<Instance>(validate(gen::generate({gen::Kind::Dense, 12, 5})));
  auto ht = mim::build(inst, mim::full_mask(inst));
  auto ft = oracle::frequencies(inst);
  u64 busy_t = 0, best = 0;
  for (auto& [t, f] : ft.freq)
    if (f > best) best = f, busy_t = t;
  REQUIRE(best >= 3);
  auto two = mim::list_eq(ht, static_cast<i64>(busy_t), 2);
  auto all = mim::list_eq(ht, static_cast<i64>(busy_t), SIZE_MAX);
  REQUIRE(two.size() == 2);
  CHECK(std::equal(two.begin(), two.end(), all.begin()));
}

TEST_CASE("metrics count the materialized subsets") {
  auto inst = tu::mk({1, 2, 4, 7, 13, 21});
  Metrics m;
  mim::build(inst, mim::full_mask(inst), &m);
  CHECK(m.subsets_enumerated == pow2(3) + pow2(3));
}
