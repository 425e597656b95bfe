#include "irm/exact.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include "irm/util.hpp"

namespace irm {

namespace {

constexpr int kMaxExactItems = 12;
constexpr int kMaxSymmetricItems = 20;

// Pairwise reduction keeps intermediate numerators and denominators far
// smaller than a left-to-right fold over thousands of rational terms.
BigRat balanced_sum(std::vector<BigRat>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return BigRat(0);
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return balanced_sum(terms, lo, mid) + balanced_sum(terms, mid, hi);
}

BigRat balanced_sum(std::vector<BigRat> terms) {
  return balanced_sum(terms, 0, terms.size());
}

}  // namespace

double to_double(const BigRat& r) { return r.convert_to<double>(); }

ExactPopularity::ExactPopularity(std::vector<BigRat> probs) : probs_(std::move(probs)) {}

ExactPopularity ExactPopularity::from_integer_weights(const std::vector<std::uint64_t>& weights) {
  if (weights.empty())
    throw std::invalid_argument("exact popularity: empty weight vector");
  BigInt total = 0;
  for (std::uint64_t w : weights) total += w;
  if (total == 0)
    throw std::invalid_argument("exact popularity: all weights are zero");

  std::vector<BigRat> probs;
  probs.reserve(weights.size());
  for (std::uint64_t w : weights)
    if (w != 0) probs.emplace_back(BigInt(w), total);
  std::stable_sort(probs.begin(), probs.end(),
                   [](const BigRat& a, const BigRat& b) { return a > b; });
  return ExactPopularity(std::move(probs));
}

ExactPopularity ExactPopularity::from_popularity(const Popularity& pop) {
  BigRat total = 0;
  for (double p : pop.probs()) total += BigRat(p);
  std::vector<BigRat> probs;
  probs.reserve(pop.probs().size());
  for (double p : pop.probs()) probs.push_back(BigRat(p) / total);
  return ExactPopularity(std::move(probs));  // already descending
}

BigRat ExactPopularity::subset_mass(SubsetIndex s) const {
  const int m = item_count();
  if (m < 32 && (s.mask >> m) != 0)
    throw std::invalid_argument("exact popularity: subset mask has bits beyond the item count");
  BigRat q = 0;
  for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
    q += prob(std::countr_zero(rest));
  return q;
}

BigRat ExactPopularity::sum_squares() const {
  BigRat s = 0;
  for (const BigRat& p : probs_) s += p * p;
  return s;
}

ExactITable::ExactITable(ExactPopularity pop, int j_max)
    : pop_(std::move(pop)), j_max_(j_max) {
  const int m = pop_.item_count();
  if (m > kMaxExactItems)
    throw std::invalid_argument("ExactITable: rational tables are capped at m = 12");
  if (j_max < 0 || j_max > m - 1)
    throw std::invalid_argument("ExactITable: layer bound must lie in [0, m-1]");

  layers_.resize(static_cast<std::size_t>(j_max) + 1);
  layers_[0] = {BigRat(1)};

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
      prefix[0] = 0;
      for (int t = 0; t < k; ++t)
        prefix[t + 1] = prefix[t] + binomial(bits[t], t + 1);
      suffix[k] = 0;
      for (int t = k - 1; t >= 0; --t)
        suffix[t] = suffix[t + 1] + binomial(bits[t], t);

      BigRat numer = 0;
      BigRat q = 0;
      for (int t = 0; t < k; ++t) {
        numer += pop_.prob(bits[t]) * prev[prefix[t] + suffix[t + 1]];
        q += pop_.prob(bits[t]);
      }
      layer[idx++] = numer / (1 - q);
    });
    assert(idx == layer.size());
  }
}

const BigRat& ExactITable::value(SubsetIndex s) const {
  const int k = s.size();
  if (k > j_max_)
    throw std::invalid_argument("ExactITable: subset larger than the built layers");
  return layers_[static_cast<std::size_t>(k)][layer_rank(s)];
}

BigRat ExactITable::layer_sum(int k) const {
  if (k < 0 || k > j_max_)
    throw std::invalid_argument("ExactITable: no such layer");
  BigRat s = 0;
  for (const BigRat& v : layers_[static_cast<std::size_t>(k)]) s += v;
  return s;
}

BigRat king_miss_rate_exact(const ExactITable& table, int j) {
  const ExactPopularity& pop = table.popularity();
  const int m = pop.item_count();
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("king_miss_rate_exact: capacity out of [1, m-1]");
  if (table.max_size() < j)
    throw std::invalid_argument("king_miss_rate_exact: table too shallow");

  BigRat sum = 0;
  for_each_subset_of_size(m, j, [&](SubsetIndex s) {
    const BigRat c = 1 - pop.subset_mass(s);
    sum += c * c * table.value(s);
  });
  return sum;
}

BigRat flajolet_miss_rate_exact(const ExactITable& table, int j) {
  const ExactPopularity& pop = table.popularity();
  const int m = pop.item_count();
  if (j < 1 || j > m)
    throw std::invalid_argument("flajolet_miss_rate_exact: capacity out of [1, m]");
  if (table.max_size() < j - 1)
    throw std::invalid_argument("flajolet_miss_rate_exact: table too shallow");

  const BigRat total_sq = pop.sum_squares();
  BigRat hit = 0;
  for (int k = 0; k < j; ++k) {
    for_each_subset_of_size(m, k, [&](SubsetIndex s) {
      BigRat sq = 0;
      for (std::uint32_t rest = s.mask; rest; rest &= rest - 1) {
        const BigRat& p = pop.prob(std::countr_zero(rest));
        sq += p * p;
      }
      hit += table.value(s) * (total_sq - sq);
    });
  }
  return 1 - hit;
}

BigRat expected_partial_time_exact(const ExactITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 0 || j > m)
    throw std::invalid_argument("expected_partial_time_exact: size out of [0, m]");
  if (table.max_size() < j - 1)
    throw std::invalid_argument("expected_partial_time_exact: table too shallow");
  BigRat sum = 0;
  for (int k = 0; k < j; ++k) sum += table.layer_sum(k);
  return sum;
}

BigRat delta_expected_time_exact(const ExactITable& table, int j) {
  const int m = table.popularity().item_count();
  if (j < 0 || j > m - 1)
    throw std::invalid_argument("delta_expected_time_exact: size out of [0, m-1]");
  return table.layer_sum(j);
}

BigRat symmetric_function_form_exact(const ExactPopularity& pop, int j) {
  const int m = pop.item_count();
  if (m > kMaxSymmetricItems)
    throw std::invalid_argument("symmetric_function_form: capped at m = 20");
  if (j < 1 || j > m)
    throw std::invalid_argument("symmetric_function_form: size out of [1, m]");

  BigRat total = 0;
  for (int k = m - j + 1; k <= m; ++k) {
    std::vector<BigRat> inv;
    inv.reserve(binomial(m, k));
    for_each_subset_of_size(m, k, [&](SubsetIndex s) {
      inv.push_back(1 / pop.subset_mass(s));
    });
    const BigRat inner = balanced_sum(std::move(inv));
    const BigRat term = BigRat(BigInt(binomial(k - 1, m - j))) * inner;
    if ((j + k - m - 1) % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

BigRat full_collection_exact(const ExactPopularity& pop) {
  const int m = pop.item_count();
  if (m > kMaxExactItems)
    throw std::invalid_argument("full_collection_exact: capped at m = 12");
  std::vector<BigRat> terms;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  terms.reserve(full);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const BigRat term = 1 / pop.subset_mass(SubsetIndex{mask});
    terms.push_back((std::popcount(mask) % 2 == 1) ? term : -term);
  }
  return balanced_sum(std::move(terms));
}

}  // namespace irm
