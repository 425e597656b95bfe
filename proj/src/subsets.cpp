#include "irm/subsets.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irm {

namespace {

void check_mask(const Popularity& pop, SubsetIndex s) {
  const int m = pop.item_count();
  if (m < 32 && (s.mask >> m) != 0)
    throw std::invalid_argument("subset mask has bits beyond the item count");
}

}  // namespace

std::vector<SubsetIndex> subsets_of_size(int m, int k) {
  if (m < 1 || m > max_items)
    throw std::invalid_argument("subsets_of_size: m out of [1, 31]");
  if (k < 0 || k > m)
    throw std::invalid_argument("subsets_of_size: k out of [0, m]");
  std::vector<SubsetIndex> out;
  out.reserve(binomial(m, k));
  for_each_subset_of_size(m, k, [&](SubsetIndex s) { out.push_back(s); });
  return out;
}

std::size_t layer_rank(SubsetIndex s) {
  std::size_t rank = 0;
  int t = 1;
  for (std::uint32_t rest = s.mask; rest; rest &= rest - 1, ++t)
    rank += binomial(std::countr_zero(rest), t);
  return rank;
}

double subset_prob_mass(const Popularity& pop, SubsetIndex s) {
  check_mask(pop, s);
  CompensatedSum q;
  for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
    q.add(pop.prob(std::countr_zero(rest)));
  return q.value();
}

double subset_complement_mass(const Popularity& pop, SubsetIndex s) {
  check_mask(pop, s);
  CompensatedSum c;
  for (int i = 0; i < pop.item_count(); ++i)
    if (!s.contains(i)) c.add(pop.prob(i));
  return c.value();
}

ITable::ITable(Popularity pop, int j_max, std::size_t entry_cap)
    : pop_(std::move(pop)), j_max_(j_max) {
  const int m = pop_.item_count();
  if (m > max_items)
    throw std::invalid_argument("ITable: more than 31 items");
  if (j_max < 0 || j_max > m - 1)
    throw std::invalid_argument(
        "ITable: layer bound must lie in [0, m-1] (the full set has no finite I)");
  const std::size_t need = entries_required(m, j_max);
  if (need > entry_cap)
    throw std::length_error("ITable: " + std::to_string(need) +
                            " entries exceed the cap of " + std::to_string(entry_cap));

  layers_.resize(static_cast<std::size_t>(j_max) + 1);
  layers_[0] = {1.0};

  std::vector<int> bits(static_cast<std::size_t>(m));
  std::vector<std::uint64_t> prefix(static_cast<std::size_t>(m) + 1);
  std::vector<std::uint64_t> suffix(static_cast<std::size_t>(m) + 1);

  for (int k = 1; k <= j_max; ++k) {
    const auto& prev = layers_[static_cast<std::size_t>(k) - 1];
    auto& layer = layers_[static_cast<std::size_t>(k)];
    layer.resize(binomial(m, k));
    std::size_t idx = 0;
    for_each_subset_of_size(m, k, [&](SubsetIndex s) {
      int nb = 0;
      for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
        bits[static_cast<std::size_t>(nb++)] = std::countr_zero(rest);

      // Ranks of the k children J\{b_t} in layer k-1, all in one pass:
      // dropping b_t shifts the positions above t down by one, so the rank
      // splits into a prefix of C(b, pos) and a suffix of C(b, pos-1).
      prefix[0] = 0;
      for (int t = 0; t < k; ++t)
        prefix[t + 1] = prefix[t] + binomial(bits[t], t + 1);
      suffix[k] = 0;
      for (int t = k - 1; t >= 0; --t)
        suffix[t] = suffix[t + 1] + binomial(bits[t], t);

      double numer = 0.0;
      for (int t = 0; t < k; ++t)
        numer += pop_.prob(bits[t]) * prev[prefix[t] + suffix[t + 1]];

      layer[idx++] = numer / subset_complement_mass(pop_, s);
    });
    assert(idx == layer.size());
  }
}

double ITable::value(SubsetIndex s) const {
  const int k = s.size();
  if (k > j_max_)
    throw std::invalid_argument("ITable: subset larger than the built layers");
  const int m = pop_.item_count();
  if (m < 32 && (s.mask >> m) != 0)
    throw std::invalid_argument("ITable: subset mask has bits beyond the item count");
  return layers_[static_cast<std::size_t>(k)][layer_rank(s)];
}

const std::vector<double>& ITable::layer(int k) const {
  if (k < 0 || k > j_max_)
    throw std::invalid_argument("ITable: no such layer");
  return layers_[static_cast<std::size_t>(k)];
}

double ITable::layer_sum(int k) const {
  CompensatedSum s;
  for (double v : layer(k)) s.add(v);
  return s.value();
}

std::size_t ITable::entry_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

std::size_t ITable::entries_required(int m, int j_max) {
  std::size_t n = 0;
  for (int k = 0; k <= j_max; ++k) n += binomial(m, k);
  return n;
}

double ITable::max_recurrence_residual() const {
  double worst = 0.0;
  const int m = pop_.item_count();
  for (int k = 1; k <= j_max_; ++k) {
    for_each_subset_of_size(m, k, [&](SubsetIndex s) {
      const double lhs = (1.0 - subset_prob_mass(pop_, s)) * value(s);
      CompensatedSum rhs;
      for (std::uint32_t rest = s.mask; rest; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        rhs.add(pop_.prob(i) * value(SubsetIndex{s.mask ^ (std::uint32_t{1} << i)}));
      }
      const double r = rhs.value();
      const double scale = std::max(std::abs(lhs), std::abs(r));
      if (scale > 0.0) worst = std::max(worst, std::abs(lhs - r) / scale);
    });
  }
  return worst;
}

double i_permutation_oracle(const Popularity& pop, SubsetIndex s) {
  check_mask(pop, s);
  const int k = s.size();
  if (k == 0) return 1.0;
  if (k > 9)
    throw std::invalid_argument("i_permutation_oracle: subsets beyond size 9 are capped");
  if (!(subset_complement_mass(pop, s) > 0.0))
    throw std::invalid_argument("i_permutation_oracle: subset carries the whole mass");

  std::vector<int> elems;
  elems.reserve(static_cast<std::size_t>(k));
  for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
    elems.push_back(std::countr_zero(rest));

  CompensatedSum total;
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
    total.add(num / den);
  } while (std::next_permutation(elems.begin(), elems.end()));
  return total.value();
}

double PairTable::get(int item, SubsetIndex s) const {
  const auto it = vals_.find(key(item, s));
  if (it == vals_.end())
    throw std::out_of_range("PairTable: no value for item " + std::to_string(item) +
                            ", mask " + std::to_string(s.mask));
  return it->second;
}

std::pair<double, double> lemma2_check(int m, int j, const PairTable& f) {
  if (m < 2 || m > max_items)
    throw std::invalid_argument("lemma2_check: m out of [2, 31]");
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("lemma2_check: j out of [1, m-1]");

  CompensatedSum lhs;
  for_each_subset_of_size(m, j, [&](SubsetIndex s) {
    for (int i = 0; i < m; ++i)
      if (!s.contains(i)) lhs.add(f.get(i, s));
  });

  CompensatedSum rhs;
  for_each_subset_of_size(m, j + 1, [&](SubsetIndex s) {
    for (std::uint32_t rest = s.mask; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      rhs.add(f.get(i, SubsetIndex{s.mask ^ (std::uint32_t{1} << i)}));
    }
  });

  return {lhs.value(), rhs.value()};
}

}  // namespace irm
