#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "pigeonsum/gen.hpp"
#include "pigeonsum/larged.hpp"
#include "pigeonsum/oracle.hpp"
#include "test_util.hpp"

using namespace pigeonsum;

TEST_CASE("parameter schedule on the worked example") {
  auto prm = larged::params(10, pow2(8), 0);
  CHECK(prm.h == 2);
  CHECK(prm.m == 13);  // ceil(256/20)
  CHECK(prm.P == 26);  // the ratio term exceeds 1, so P = 2m
  CHECK(prm.k == 1);   // ceil(13/104)
  CHECK(prm.alpha == doctest::Approx(0.25));
}

TEST_CASE("P formula arithmetic") {
  CHECK(static_cast<u64>(larged::p_formula(10, 2, 8)) == 16);  // min term is 1
  // ratio below 1: 2^10/(2*64^2) = 1/8, so P = 128 * (1/8)^{2/3} = 32
  CHECK(static_cast<u64>(larged::p_formula(10, 2, 64) + 0.5L) == 32);
}

TEST_CASE("alpha from h and k") {
  auto prm = larged::params(12, pow2(9), 1);  // h = 3
  CHECK(prm.alpha == doctest::Approx(1.0 / (6.0 * std::sqrt(double(prm.k)))));
  CHECK(prm.alpha <= 1.0 / (2.0 * prm.h));
}

TEST_CASE("parameter invariants across the j range") {
  for (int n : {8, 12, 17, 24}) {
    for (u64 delta : {ceil_sqrt_u64(pow2(n)), pow2(n) - 1, pow2(n * 3 / 4)}) {
      if ((u128)delta * delta < (u128{1} << n) || delta >= pow2(n)) continue;
      for (int j = 0; j < n; ++j) {
        auto prm = larged::params(n, delta, j);
        CHECK(prm.h >= 2);
        CHECK(prm.m >= 1);
        CHECK(prm.P >= 2);
        CHECK(prm.P <= 2 * prm.m);
        CHECK(prm.k >= 1);
        CHECK(prm.alpha <= 1.0 / (2.0 * static_cast<double>(prm.h)));
      }
    }
  }
}

TEST_CASE("parameter preconditions") {
  CHECK_THROWS_AS(larged::params(10, 31, 0), Error);        // below 2^{n/2}
  CHECK_THROWS_AS(larged::params(10, pow2(10), 0), Error);  // not < 2^n
  CHECK_THROWS_AS(larged::params(10, pow2(8), 10), Error);  // j out of range
  CHECK_THROWS_AS(larged::params(2, 2, 0), Error);          // n too small
  CHECK_NOTHROW(larged::params(10, 32, 0));                 // 2^5 <= 32 boundary
}

TEST_CASE("primality test agrees with trial division and known composites") {
  auto slow_prime = [](u64 x) {
    if (x < 2) return false;
    for (u64 p = 2; p * p <= x; ++p)
      if (x % p == 0) return false;
    return true;
  };
  for (u64 x = 0; x < 2000; ++x) CHECK(is_prime_u64(x) == slow_prime(x));
  for (u64 carmichael : {561ull, 1105ull, 1729ull, 2465ull, 6601ull, 8911ull, 62745ull})
    CHECK_FALSE(is_prime_u64(carmichael));
  CHECK(is_prime_u64((u64{1} << 61) - 1));  // Mersenne prime
  CHECK_FALSE(is_prime_u64(((u64{1} << 61) - 1) * 3));
  CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
}

TEST_CASE("sample_prime ranges") {
  std::mt19937_64 rng(1);
  std::set<u64> seen2, seen10, seen16;
  for (int i = 0; i < 400; ++i) {
    seen2.insert(larged::sample_prime(2, rng));
    seen10.insert(larged::sample_prime(10, rng));
    seen16.insert(larged::sample_prime(16, rng));
  }
  CHECK(seen2 == std::set<u64>{2, 3});
  CHECK(seen10 == std::set<u64>{11, 13, 17, 19});
  CHECK(seen16 == std::set<u64>{17, 19, 23, 29, 31});
}

TEST_CASE("DP table invariants") {
  auto inst = tu::mk({1, 2, 3});
  auto dp = larged::build_dp(inst, 3);
  CHECK(dp.bin_size(0) == 4);
  CHECK(dp.bin_size(1) == 2);
  CHECK(dp.bin_size(2) == 2);

  for (int n : {8, 11}) {
    for (u64 seed = 0; seed < 3; ++seed) {
      auto rinst = std::get<Instance>(validate(gen::generate({gen::Kind::Random, n, seed})));
      for (u64 p : {2ull, 5ull, 13ull}) {
        Metrics m;
        auto table = larged::build_dp(rinst, p, &m);
        CHECK(m.dp_cells == (u64(n) + 1) * p);
        u64 total = 0;
        for (u64 r = 0; r < p; ++r) total += table.bin_size(r);
        CHECK(total == pow2(n));
        CHECK(table.at(0, 0) == 1);
        for (u64 r = 1; r < p; ++r) CHECK(table.at(0, r) == 0);
      }
    }
  }
}

TEST_CASE("unrank reproduces the declared order") {
  auto inst = tu::mk({1, 2, 3});
  auto dp = larged::build_dp(inst, 3);
  CHECK(larged::unrank(dp, inst, 0, 1) == 0b000);  // {}
  CHECK(larged::unrank(dp, inst, 0, 2) == 0b011);  // {1,2}
  CHECK(larged::unrank(dp, inst, 0, 3) == 0b100);  // {3}
  CHECK(larged::unrank(dp, inst, 0, 4) == 0b111);  // {1,2,3}
  CHECK(larged::unrank(dp, inst, 1, 1) == 0b001);  // {1}
  CHECK(larged::unrank(dp, inst, 1, 2) == 0b101);  // {1,3}
  CHECK_THROWS_AS(larged::unrank(dp, inst, 0, 5), Error);
  CHECK_THROWS_AS(larged::unrank(dp, inst, 0, 0), Error);
}

TEST_CASE("unrank is a bijection onto each residue class in mask order") {
  for (int n : {6, 9, 11}) {
    for (u64 seed = 0; seed < 2; ++seed) {
      auto inst = std::get<Instance>(validate(gen::generate({gen::Kind::Random, n, seed})));
      for (u64 p : {3ull, 7ull, 13ull}) {
        auto dp = larged::build_dp(inst, p);
        for (u64 r = 0; r < p; ++r) {
          std::vector<u64> expected;
          for (u64 mask = 0; mask < pow2(n); ++mask)
            if (subset_sum(inst, mask) % p == r) expected.push_back(mask);
          REQUIRE(dp.bin_size(r) == expected.size());
          for (u64 k = 1; k <= expected.size(); ++k)
            CHECK(larged::unrank(dp, inst, r, k) == expected[k - 1]);
        }
      }
    }
  }
}

TEST_CASE("sample_bin draws the right marginal") {
  auto inst = std::get<Instance>(validate(gen::generate({gen::Kind::Dense, 10, 4})));
  const u64 p = 11;
  auto dp = larged::build_dp(inst, p);
  std::mt19937_64 rng(2024);
  const double alpha = 1.0 / 8.0;
  const u64 r = 5;
  const u64 bin = dp.bin_size(r);
  const int trials = 3000;
  double sum_sizes = 0;
  for (int i = 0; i < trials; ++i) {
    auto sample = larged::sample_bin(dp, inst, r, alpha, rng);
    std::set<u64> uniq(sample.begin(), sample.end());
    CHECK(uniq.size() == sample.size());  // distinct ranks -> distinct masks
    for (u64 mask : sample) CHECK(subset_sum(inst, mask) % p == r);
    sum_sizes += static_cast<double>(sample.size());
  }
  const double mean = sum_sizes / trials;
  const double want = alpha * static_cast<double>(bin);
  const double sigma =
      std::sqrt(static_cast<double>(bin) * alpha * (1 - alpha)) / std::sqrt(double(trials));
  CHECK(std::abs(mean - want) <= 5 * sigma);
}

TEST_CASE("colored-balls failure bound") {
  // Abstract process: k colors x h copies, keep each at rate alpha.
  std::mt19937_64 rng(99);
  for (u64 h : {2ull, 3ull}) {
    for (u64 k : {1ull, 4ull}) {
      const double alpha = 1.0 / (2.0 * h * std::sqrt(double(k)));
      const int trials = 20000;
      int all_distinct = 0;
      for (int t = 0; t < trials; ++t) {
        bool repeat = false;
        for (u64 color = 0; color < k && !repeat; ++color) {
          int kept = 0;
          for (u64 copy = 0; copy < h; ++copy) {
            if (std::generate_canonical<double, 53>(rng) < alpha) ++kept;
          }
          if (kept >= 2) repeat = true;
        }
        if (!repeat) ++all_distinct;
      }
      const double freq = double(all_distinct) / trials;
      const double bound = std::exp(-double(k * h * (h - 1)) * alpha * alpha / 4.0);
      const double se = std::sqrt(bound * (1 - bound) / trials);
      CHECK(freq <= bound + 3 * se);
    }
  }
}

TEST_CASE("attempt and solve on a dense instance") {
  auto raw = gen::generate({gen::Kind::Dense, 16, 2});
  auto inst = std::get<Instance>(validate(raw));
  Metrics m;
  auto sol = larged::solve(inst, pow2(8), 123, 0, &m);
  REQUIRE(sol.has_value());
  CHECK(verify(raw, *sol));
  CHECK(m.attempts >= 1);
  CHECK(m.dp_cells > 0);
}

TEST_CASE("solve is reproducible per seed") {
  auto raw = gen::generate({gen::Kind::Dense, 14, 9});
  auto inst = std::get<Instance>(validate(raw));
  auto s1 = larged::solve(inst, pow2(7), 7);
  auto s2 = larged::solve(inst, pow2(7), 7);
  REQUIRE(s1.has_value());
  REQUIRE(s2.has_value());
  CHECK(*s1 == *s2);
}

TEST_CASE("budget exhaustion on a solution-poor instance") {
  // Near-binary has d = 1: the subsample almost never catches the single
  // duplicated sum, so a tiny budget runs out.
  auto inst = std::get<Instance>(validate(gen::generate({gen::Kind::NearBinary, 16, 0})));
  Metrics m;
  auto sol = larged::solve(inst, pow2(8), 5, 10, &m);
  CHECK_FALSE(sol.has_value());
  CHECK(m.attempts == 10);
}
