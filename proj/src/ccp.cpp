#include "irm/ccp.hpp"

#include <algorithm>
#include <cmath>

#include "irm/exact.hpp"
#include "irm/util.hpp"

namespace irm {

double expected_partial_time(const ITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 0 || j > m)
    throw std::invalid_argument("expected_partial_time: size out of [0, m]");
  if (table.max_size() < j - 1)
    throw std::invalid_argument("expected_partial_time: table too shallow");

  CompensatedSum sum;
  for (int k = 0; k < j; ++k)
    for (double v : table.layer(k)) sum.add(v);
  return sum.value();
}

double delta_expected_time(const ITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 0 || j > m - 1)
    throw std::invalid_argument("delta_expected_time: size out of [0, m-1]");
  if (table.max_size() < j)
    throw std::invalid_argument("delta_expected_time: table too shallow");
  return table.layer_sum(j);
}

double symmetric_function_form(const Popularity& pop, int j) {
  return to_double(symmetric_function_form_exact(ExactPopularity::from_popularity(pop), j));
}

double ferrante_form(const Popularity& pop, int k) {
  const int m = pop.item_count();
  if (k < 1 || k > m)
    throw std::invalid_argument("ferrante_form: size out of [1, m]");
  if (k - 1 > 8)
    throw std::invalid_argument("ferrante_form: tuples beyond length 8 are capped");

  // E_s is the permutation sum over ordered (s-1)-tuples; E_1 = 1 (the empty
  // tuple). Enumerated directly, never through the I table.
  CompensatedSum total;
  total.add(1.0);
  for (int s = 2; s <= k; ++s) {
    CompensatedSum es;
    std::vector<int> elems(static_cast<std::size_t>(s) - 1);
    for_each_subset_of_size(m, s - 1, [&](SubsetIndex sub) {
      int nb = 0;
      for (std::uint32_t rest = sub.mask; rest; rest &= rest - 1)
        elems[static_cast<std::size_t>(nb++)] = std::countr_zero(rest);
      do {
        double num = 1.0;
        double den = 1.0;
        double remaining = 1.0;
        for (int e : elems) {
          const double p = pop.prob(e);
          num *= p;
          remaining -= p;
          den *= remaining;
        }
        es.add(num / den);
      } while (std::next_permutation(elems.begin(), elems.end()));
    });
    total.add(es.value());
  }
  return total.value();
}

double uniform_expected_time(int m, int j) {
  if (m < 1) throw std::invalid_argument("uniform_expected_time: m must be >= 1");
  if (j < 0 || j > m)
    throw std::invalid_argument("uniform_expected_time: size out of [0, m]");
  if (j == 0) return 0.0;
  return static_cast<double>(m) * harmonic_range(m - j + 1, m);
}

double full_collection_inclusion_exclusion(const Popularity& pop) {
  const int m = pop.item_count();
  if (m > 24)
    throw std::invalid_argument(
        "full_collection_inclusion_exclusion: 2^m enumeration is capped at m = 24");

  CompensatedSum sum;
  const std::uint32_t full = (m == 32) ? ~0u : (std::uint32_t{1} << m) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const double q = subset_prob_mass(pop, SubsetIndex{mask});
    const double term = 1.0 / q;
    sum.add((std::popcount(mask) % 2 == 1) ? term : -term);
  }
  return sum.value();
}

CcpCurve ccp_curve(const Popularity& pop, int j_lo, int j_hi) {
  const int m = pop.item_count();
  if (j_lo < 0 || j_hi > m || j_lo > j_hi)
    throw std::invalid_argument("ccp_curve: size range out of [0, m]");

  const int layers_needed = std::min(j_hi, m - 1);
  const ITable table(pop, layers_needed);

  CcpCurve curve;
  curve.m = m;
  for (int j = j_lo; j <= j_hi; ++j) {
    CcpEntry e;
    e.j = j;
    e.e_layers = expected_partial_time(table, j);
    if (j >= 1 && m <= 12) e.e_symmetric = symmetric_function_form(pop, j);
    if (j >= 1 && j - 1 <= 8) e.e_ferrante = ferrante_form(pop, j);
    if (j <= m - 1) e.delta_e = delta_expected_time(table, j);
    curve.entries.push_back(e);
  }
  return curve;
}

}  // namespace irm
