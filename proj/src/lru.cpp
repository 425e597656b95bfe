#include "irm/lru.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irm/util.hpp"

namespace irm {

double MissRateCurve::max_discrepancy() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.discrepancy);
  return worst;
}

double king_miss_rate(const ITable& table, int j) {
  const Popularity& pop = table.popularity();
  const int m = pop.item_count();
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("king_miss_rate: capacity out of [1, m-1]");
  if (table.max_size() < j)
    throw std::invalid_argument("king_miss_rate: table too shallow");

  CompensatedSum sum;
  const auto& layer = table.layer(j);
  std::size_t idx = 0;
  for_each_subset_of_size(m, j, [&](SubsetIndex s) {
    const double c = subset_complement_mass(pop, s);
    sum.add(c * c * layer[idx++]);
  });
  return sum.value();
}

double king_miss_rate_bruteforce(const Popularity& pop, int j) {
  const int m = pop.item_count();
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("king_miss_rate_bruteforce: capacity out of [1, m-1]");
  if (j > 8)
    throw std::invalid_argument("king_miss_rate_bruteforce: capacity beyond 8 is capped");

  // The original t-uple sum: every ordered arrangement of every size-j
  // subset, with the j-1 leading partial complements in the denominator.
  CompensatedSum total;
  std::vector<int> elems(static_cast<std::size_t>(j));
  for_each_subset_of_size(m, j, [&](SubsetIndex s) {
    int nb = 0;
    for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
      elems[static_cast<std::size_t>(nb++)] = std::countr_zero(rest);
    do {
      double num = 1.0;
      double den = 1.0;
      double remaining = 1.0;
      for (int t = 0; t < j; ++t) {
        const double p = pop.prob(elems[static_cast<std::size_t>(t)]);
        num *= p;
        remaining -= p;
        if (t < j - 1) den *= remaining;
      }
      total.add(num * remaining / den);
    } while (std::next_permutation(elems.begin(), elems.end()));
  });
  return total.value();
}

namespace {

// sum_{|K|=k} I_K * (sum_{i not in K} p_i^2) for one layer.
double hit_layer_sum(const ITable& table, int k) {
  const Popularity& pop = table.popularity();
  const int m = pop.item_count();
  CompensatedSum sum;
  const auto& layer = table.layer(k);
  std::size_t idx = 0;
  for_each_subset_of_size(m, k, [&](SubsetIndex s) {
    CompensatedSum sq;
    for (int i = 0; i < m; ++i)
      if (!s.contains(i)) sq.add(pop.prob(i) * pop.prob(i));
    sum.add(layer[idx++] * sq.value());
  });
  return sum.value();
}

}  // namespace

double flajolet_miss_rate(const ITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 1 || j > m)
    throw std::invalid_argument("flajolet_miss_rate: capacity out of [1, m]");
  if (table.max_size() < j - 1)
    throw std::invalid_argument("flajolet_miss_rate: table too shallow");

  CompensatedSum hit;
  for (int k = 0; k < j; ++k) hit.add(hit_layer_sum(table, k));
  return 1.0 - hit.value();
}

double miss_rate_complement_form(const ITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("miss_rate_complement_form: capacity out of [1, m-1]");
  if (table.max_size() < m - 1)
    throw std::invalid_argument(
        "miss_rate_complement_form: needs every layer up to m-1");

  CompensatedSum miss;
  for (int k = j; k < m; ++k) miss.add(hit_layer_sum(table, k));
  return miss.value();
}

double uniform_miss_rate(int m, int j) {
  if (m < 1) throw std::invalid_argument("uniform_miss_rate: m must be >= 1");
  if (j < 0 || j > m)
    throw std::invalid_argument("uniform_miss_rate: capacity out of [0, m]");
  return static_cast<double>(m - j) / static_cast<double>(m);
}

MissRateCurve check_identity(const Popularity& pop, int j_max) {
  const int m = pop.item_count();
  if (j_max < 1 || j_max > m - 1)
    throw std::invalid_argument("check_identity: j_max out of [1, m-1]");

  const ITable table(pop, j_max);

  MissRateCurve curve;
  curve.m = m;
  curve.entries.reserve(static_cast<std::size_t>(j_max));

  // One pass per layer; the Flajolet value at capacity j is a running
  // prefix of the hit-layer sums.
  CompensatedSum hit;
  for (int j = 1; j <= j_max; ++j) {
    hit.add(hit_layer_sum(table, j - 1));
    MissRateEntry e;
    e.capacity = j;
    e.mr_king = king_miss_rate(table, j);
    e.mr_flajolet = 1.0 - hit.value();
    e.discrepancy = std::abs(e.mr_king - e.mr_flajolet);
    curve.entries.push_back(e);
  }
  return curve;
}

MissRateCurve verify_identity(const Popularity& pop, int j_max, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("verify_identity: tolerance must be positive");
  MissRateCurve curve = check_identity(pop, j_max);
  for (const auto& e : curve.entries) {
    if (!(e.discrepancy <= tol))
      throw identity_violation(
          "verify_identity: |King - Flajolet| = " + std::to_string(e.discrepancy) +
          " at capacity " + std::to_string(e.capacity) + " exceeds " +
          std::to_string(tol));
  }
  return curve;
}

}  // namespace irm
