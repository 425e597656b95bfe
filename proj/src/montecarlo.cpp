#include "irm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irm/util.hpp"

namespace irm {

PopularitySampler::PopularitySampler(const Popularity& pop) {
  cum_.reserve(pop.probs().size());
  double running = 0.0;
  for (double p : pop.probs()) {
    running += p;
    cum_.push_back(running);
  }
  cum_.back() = 1.0;  // absorb normalization ulps so every u < 1 lands
}

int PopularitySampler::draw(std::mt19937_64& eng) const {
  const double u = uniform_unit(eng);
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cum_.begin());
  return static_cast<int>(std::min(idx, cum_.size() - 1));
}

LruStack::LruStack(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("LruStack: capacity must be >= 1");
  where_.reserve(static_cast<std::size_t>(capacity) * 2);
}

bool LruStack::access(int item) {
  const auto it = where_.find(item);
  if (it != where_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return true;
  }
  order_.push_front(item);
  where_[item] = order_.begin();
  if (static_cast<int>(order_.size()) > capacity_) {
    where_.erase(order_.back());
    order_.pop_back();
    ++evictions_;
  }
  return false;
}

SimEstimate simulate_lru(const Popularity& pop, int capacity, std::uint64_t warmup,
                         std::uint64_t accesses, std::uint64_t seed) {
  const int m = pop.item_count();
  if (capacity < 1 || capacity > m)
    throw std::invalid_argument("simulate_lru: capacity out of [1, m]");
  if (accesses < 1000)
    throw std::invalid_argument("simulate_lru: need at least 1000 accesses");

  std::mt19937_64 eng(seed);
  const PopularitySampler sampler(pop);
  LruStack cache(capacity);

  std::uint64_t warm = (warmup == auto_warmup) ? 10 * static_cast<std::uint64_t>(m) : warmup;
  for (std::uint64_t i = 0; i < warm; ++i) cache.access(sampler.draw(eng));
  if (warmup == auto_warmup && capacity < m) {
    // keep absorbing cold misses until the cache has actually filled and
    // churned once (bounded in case of absurdly skewed laws)
    std::uint64_t extra = 0;
    while (cache.evictions() == 0 && extra < 100'000'000) {
      cache.access(sampler.draw(eng));
      ++extra;
    }
  }

  constexpr std::uint64_t batches = 32;
  const std::uint64_t per_batch = accesses / batches;

  std::uint64_t total_miss = 0;
  double batch_mean_sum = 0.0;
  std::vector<double> batch_means;
  batch_means.reserve(batches);
  for (std::uint64_t b = 0; b < batches; ++b) {
    std::uint64_t miss = 0;
    for (std::uint64_t i = 0; i < per_batch; ++i)
      if (!cache.access(sampler.draw(eng))) ++miss;
    total_miss += miss;
    const double frac = static_cast<double>(miss) / static_cast<double>(per_batch);
    batch_means.push_back(frac);
    batch_mean_sum += frac;
  }

  const std::uint64_t counted = batches * per_batch;
  const double mean = static_cast<double>(total_miss) / static_cast<double>(counted);
  const double grand = batch_mean_sum / static_cast<double>(batches);
  double var = 0.0;
  for (double b : batch_means) var += (b - grand) * (b - grand);
  var /= static_cast<double>(batches - 1);
  const double std_error = std::sqrt(var / static_cast<double>(batches));

  return SimEstimate{mean, std_error, counted, seed};
}

SimEstimate simulate_ccp(const Popularity& pop, int j, std::uint64_t trials,
                         std::uint64_t seed) {
  const int m = pop.item_count();
  if (j < 1 || j > m)
    throw std::invalid_argument("simulate_ccp: collection size out of [1, m]");
  if (trials < 1000)
    throw std::invalid_argument("simulate_ccp: need at least 1000 trials");

  std::mt19937_64 eng(seed);
  const PopularitySampler sampler(pop);

  std::vector<std::uint64_t> seen_at(static_cast<std::size_t>(m), 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t t = 1; t <= trials; ++t) {
    int distinct = 0;
    std::uint64_t draws = 0;
    while (distinct < j) {
      const int item = sampler.draw(eng);
      ++draws;
      if (seen_at[static_cast<std::size_t>(item)] != t) {
        seen_at[static_cast<std::size_t>(item)] = t;
        ++distinct;
      }
    }
    const double d = static_cast<double>(draws);
    sum += d;
    sum_sq += d * d;
  }

  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return SimEstimate{mean, std::sqrt(var / n), trials, seed};
}

}  // namespace irm
