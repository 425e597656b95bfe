#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "irm/lru.hpp"
#include "irm/popularity.hpp"
#include "irm/subsets.hpp"
#include "helpers.hpp"

using irm::ITable;
using irm::Popularity;
using testutil::rel_diff;

TEST_CASE("hand-checked miss rates for (0.5, 0.3, 0.2)") {
  const auto p = Popularity::from_weights({5, 3, 2});
  const ITable table(p, 2);

  CHECK(rel_diff(irm::king_miss_rate(table, 1), 0.62) <= 1e-14);
  CHECK(rel_diff(irm::king_miss_rate(table, 2), 0.2807142857142857) <= 1e-13);
  CHECK(rel_diff(irm::flajolet_miss_rate(table, 1), 0.62) <= 1e-14);
  CHECK(rel_diff(irm::flajolet_miss_rate(table, 2), 0.2807142857142857) <= 1e-13);

  const ITable full(p, 2);  // complement form reads layers up to m-1 = 2
  CHECK(rel_diff(irm::miss_rate_complement_form(full, 2), 0.2807142857142857) <= 1e-13);
  CHECK(rel_diff(irm::miss_rate_complement_form(full, 1), 0.62) <= 1e-13);

  CHECK(rel_diff(irm::king_miss_rate_bruteforce(p, 2), 0.2807142857142857) <= 1e-13);
}

TEST_CASE("capacity-1 identity: miss rate is 1 - sum p^2") {
  std::mt19937_64 eng(31337);
  for (int round = 0; round < 10; ++round) {
    const int m = 2 + static_cast<int>(eng() % 9);
    const auto pop = testutil::random_popularity(m, eng);
    const ITable table(pop, 1);
    const double expect = 1.0 - pop.sum_squares();
    CHECK(rel_diff(irm::king_miss_rate(table, 1), expect) <= 1e-13);
    CHECK(rel_diff(irm::flajolet_miss_rate(table, 1), expect) <= 1e-13);
  }

  const auto two = Popularity::from_weights({7, 3});
  const ITable t2(two, 1);
  CHECK(rel_diff(irm::king_miss_rate_bruteforce(two, 1), 0.42) <= 1e-15);
  CHECK(rel_diff(irm::king_miss_rate(t2, 1), 0.42) <= 1e-15);
}

TEST_CASE("uniform closed form 1 - j/m on every route") {
  for (int m = 2; m <= 8; ++m) {
    const auto u = Popularity::uniform(m);
    const ITable table(u, m - 1);
    for (int j = 1; j <= m - 1; ++j) {
      const double expect = irm::uniform_miss_rate(m, j);
      CHECK(rel_diff(irm::king_miss_rate(table, j), expect) <= 1e-12);
      CHECK(rel_diff(irm::flajolet_miss_rate(table, j), expect) <= 1e-12);
      CHECK(rel_diff(irm::miss_rate_complement_form(table, j), expect) <= 1e-12);
      if (j <= 6)
        CHECK(rel_diff(irm::king_miss_rate_bruteforce(u, j), expect) <= 1e-12);
    }
    CHECK(std::abs(irm::flajolet_miss_rate(table, m)) <= 1e-10);
  }
  CHECK(irm::uniform_miss_rate(4, 2) == 0.5);
  CHECK(irm::uniform_miss_rate(7, 0) == 1.0);
  CHECK(irm::uniform_miss_rate(7, 7) == 0.0);
  CHECK(irm::uniform_miss_rate(5, 3) == 0.4);
  CHECK_THROWS_AS(irm::uniform_miss_rate(4, 5), std::invalid_argument);
}

TEST_CASE("three routes agree on random laws") {
  std::mt19937_64 eng(777);
  for (int round = 0; round < 8; ++round) {
    const int m = 2 + static_cast<int>(eng() % 11);  // 2..12
    const auto pop = testutil::random_popularity(m, eng);
    const ITable table(pop, m - 1);
    for (int j = 1; j <= m - 1; ++j) {
      const double king = irm::king_miss_rate(table, j);
      const double fla = irm::flajolet_miss_rate(table, j);
      const double comp = irm::miss_rate_complement_form(table, j);
      CHECK(king >= 0.0);
      CHECK(king <= 1.0);
      CHECK(rel_diff(king, fla) <= 1e-10);
      CHECK(rel_diff(fla, comp) <= 1e-10);
    }
    CHECK(std::abs(irm::flajolet_miss_rate(table, m)) <= 1e-10);
  }
}

TEST_CASE("brute-force t-uple sum matches the subset form") {
  std::mt19937_64 eng(888);
  for (int round = 0; round < 4; ++round) {
    const int m = 4 + static_cast<int>(eng() % 5);  // 4..8
    const auto pop = testutil::random_popularity(m, eng);
    const ITable table(pop, m - 1);
    for (int j = 1; j <= std::min(6, m - 1); ++j)
      CHECK(rel_diff(irm::king_miss_rate_bruteforce(pop, j),
                     irm::king_miss_rate(table, j)) <= 1e-10);
  }
}

TEST_CASE("identity check produces a curve and flags forced failures") {
  const auto pop = Popularity::from_weights({5, 3, 2});
  const auto curve = irm::verify_identity(pop, 2, 1e-10);
  REQUIRE(curve.entries.size() == 2);
  CHECK(curve.m == 3);
  CHECK(curve.entries[0].capacity == 1);
  CHECK(curve.entries[1].capacity == 2);
  CHECK(curve.max_discrepancy() <= 1e-10);

  // an absurd tolerance must convert the rounding residue into an error
  const auto z = Popularity::zipf(8, 1.0);
  CHECK(irm::check_identity(z, 7).max_discrepancy() > 0.0);
  CHECK_THROWS_AS(irm::verify_identity(z, 7, 1e-30), irm::identity_violation);
}

TEST_CASE("identity over many random laws") {
  std::mt19937_64 eng(4242);
  for (int round = 0; round < 20; ++round) {
    const int m = 2 + static_cast<int>(eng() % 7);
    const auto pop = testutil::random_popularity(m, eng);
    CHECK_NOTHROW(irm::verify_identity(pop, m - 1, 1e-10));
  }
}

TEST_CASE("miss rate is empirically non-increasing in capacity") {
  // expected under the model but not proven in the sources; kept as an
  // empirical check on generated cases
  std::mt19937_64 eng(5);
  for (int round = 0; round < 6; ++round) {
    const int m = 3 + static_cast<int>(eng() % 8);
    const auto pop = testutil::random_popularity(m, eng);
    const ITable table(pop, m - 1);
    double prev = 1.0;
    for (int j = 1; j <= m - 1; ++j) {
      const double mr = irm::king_miss_rate(table, j);
      CHECK(mr <= prev + 1e-12);
      prev = mr;
    }
  }
}

TEST_CASE("relabeling the items changes nothing, bit for bit") {
  const std::vector<double> base{7, 1, 4, 2, 6};
  std::vector<double> shuffled{4, 6, 1, 7, 2};
  const auto a = Popularity::from_weights(base);
  const auto b = Popularity::from_weights(shuffled);
  const ITable ta(a, 4);
  const ITable tb(b, 4);
  for (int j = 1; j <= 4; ++j) {
    CHECK(irm::king_miss_rate(ta, j) == irm::king_miss_rate(tb, j));
    CHECK(irm::flajolet_miss_rate(ta, j) == irm::flajolet_miss_rate(tb, j));
  }
}

TEST_CASE("argument validation") {
  const auto pop = Popularity::from_weights({5, 3, 2});
  const ITable shallow(pop, 1);
  CHECK_THROWS_AS(irm::king_miss_rate(shallow, 2), std::invalid_argument);
  CHECK_THROWS_AS(irm::king_miss_rate(shallow, 0), std::invalid_argument);
  CHECK_THROWS_AS(irm::flajolet_miss_rate(shallow, 3), std::invalid_argument);
  CHECK_THROWS_AS(irm::miss_rate_complement_form(shallow, 1), std::invalid_argument);
  CHECK_THROWS_AS(irm::king_miss_rate_bruteforce(Popularity::uniform(12), 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(irm::verify_identity(pop, 3, 1e-10), std::invalid_argument);
}
