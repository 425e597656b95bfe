#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irm/montecarlo.hpp"
#include "irm/popularity.hpp"

using irm::LruStack;
using irm::Popularity;
using irm::SimEstimate;

TEST_CASE("lru stack semantics") {
  LruStack cache(2);
  CHECK(!cache.access(1));
  CHECK(!cache.access(2));
  CHECK(cache.access(1));        // hit moves 1 to the front
  CHECK(cache.most_recent() == 1);
  CHECK(!cache.access(3));       // evicts 2, the least recent
  CHECK(cache.evictions() == 1);
  CHECK(!cache.access(2));       // 2 is gone; now evicts 1
  CHECK(cache.access(3));
  CHECK(cache.size() == 2);
  CHECK(cache.most_recent() == 3);
  CHECK_THROWS_AS(LruStack(0), std::invalid_argument);

  std::mt19937_64 eng(1);
  LruStack sweep(3);
  for (int i = 0; i < 1000; ++i) {
    const int item = static_cast<int>(eng() % 8);
    sweep.access(item);
    CHECK(sweep.size() <= 3);
    CHECK(sweep.most_recent() == item);
  }
}

TEST_CASE("same seed reproduces the estimate bit for bit") {
  const auto pop = Popularity::from_weights({5, 3, 2});
  const SimEstimate a = irm::simulate_lru(pop, 2, irm::auto_warmup, 20000, 777);
  const SimEstimate b = irm::simulate_lru(pop, 2, irm::auto_warmup, 20000, 777);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == b.samples);

  const SimEstimate c = irm::simulate_ccp(pop, 3, 20000, 42);
  const SimEstimate d = irm::simulate_ccp(pop, 3, 20000, 42);
  CHECK(c.mean == d.mean);
  CHECK(c.std_error == d.std_error);
}

TEST_CASE("lru simulation lands near the exact miss rates") {
  const auto u4 = Popularity::uniform(4);
  const SimEstimate e = irm::simulate_lru(u4, 2, irm::auto_warmup, 200000, 1);
  CHECK(std::abs(e.mean - 0.5) <= 4 * e.std_error);
  CHECK(e.std_error > 0.0);
  CHECK(e.samples == 200000 / 32 * 32);

  const auto p = Popularity::from_weights({5, 3, 2});
  const SimEstimate f = irm::simulate_lru(p, 2, irm::auto_warmup, 200000, 2);
  CHECK(std::abs(f.mean - 0.2807142857142857) <= 4 * f.std_error);
}

TEST_CASE("full-capacity cache misses only while cold") {
  const auto u4 = Popularity::uniform(4);
  const SimEstimate e = irm::simulate_lru(u4, 4, irm::auto_warmup, 100000, 3);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("collection sampler lands near the exact times") {
  const auto u3 = Popularity::uniform(3);
  const SimEstimate e = irm::simulate_ccp(u3, 3, 50000, 4);
  CHECK(std::abs(e.mean - 5.5) <= 4 * e.std_error);

  const auto p = Popularity::from_weights({5, 3, 2});
  const SimEstimate f = irm::simulate_ccp(p, 2, 50000, 5);
  CHECK(std::abs(f.mean - 2.678571428571429) <= 4 * f.std_error);

  const SimEstimate one = irm::simulate_ccp(p, 1, 1000, 6);
  CHECK(one.mean == 1.0);
  CHECK(one.std_error == 0.0);
}

TEST_CASE("nominal coverage of the 2-sigma interval across seeds") {
  const auto pop = Popularity::from_weights({5, 3, 2});
  const double exact_mr = 0.2807142857142857;
  int hits_lru = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const SimEstimate e = irm::simulate_lru(pop, 2, irm::auto_warmup, 100000, seed);
    if (std::abs(e.mean - exact_mr) <= 2 * e.std_error) ++hits_lru;
  }
  CHECK(hits_lru >= 43);  // >= 0.86 of 50 on a nominal 95% interval

  const double exact_ccp = 2.678571428571429;
  int hits_ccp = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const SimEstimate e = irm::simulate_ccp(pop, 2, 10000, seed);
    if (std::abs(e.mean - exact_ccp) <= 2 * e.std_error) ++hits_ccp;
  }
  CHECK(hits_ccp >= 43);
}

TEST_CASE("argument validation") {
  const auto pop = Popularity::from_weights({5, 3, 2});
  CHECK_THROWS_AS(irm::simulate_lru(pop, 0, 0, 10000, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::simulate_lru(pop, 4, 0, 10000, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::simulate_lru(pop, 2, 0, 999, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::simulate_ccp(pop, 0, 10000, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::simulate_ccp(pop, 4, 10000, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::simulate_ccp(pop, 2, 999, 1), std::invalid_argument);
}
