#ifndef IRM_MONTECARLO_HPP
#define IRM_MONTECARLO_HPP

#include <cstdint>
#include <limits>
#include <list>
#include <random>
#include <unordered_map>
#include <vector>

#include "irm/popularity.hpp"

namespace irm {

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// All randomness comes from std::mt19937_64 (algorithm fixed by the
// standard) plus the uniform mapping (x >> 11) * 2^-53 and a cumulative
// table walked by binary search; a seed therefore reproduces bit-for-bit on
// any conforming platform.
inline double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// O(log m) item draws from a popularity law via its cumulative table.
class PopularitySampler {
 public:
  explicit PopularitySampler(const Popularity& pop);
  int draw(std::mt19937_64& eng) const;

 private:
  std::vector<double> cum_;
};

// Fully associative LRU stack: O(1) expected per access.
class LruStack {
 public:
  explicit LruStack(int capacity);

  // true on hit. A miss inserts the item, evicting the least recently used
  // one when the cache is full. Either way the item ends up most recent.
  bool access(int item);

  int size() const { return static_cast<int>(order_.size()); }
  int capacity() const { return capacity_; }
  int most_recent() const { return order_.front(); }
  std::uint64_t evictions() const { return evictions_; }

 private:
  int capacity_;
  std::list<int> order_;  // front = most recently used
  std::unordered_map<int, std::list<int>::iterator> where_;
  std::uint64_t evictions_ = 0;
};

// Warmup sentinel: run 10*m accesses, then keep going until the first
// eviction (when capacity < m), so cold misses stay out of the estimate.
inline constexpr std::uint64_t auto_warmup = std::numeric_limits<std::uint64_t>::max();

// Steady-state miss fraction of an LRU cache under i.i.d. draws from pop.
// The counted accesses are split into 32 batches; std_error is the standard
// error of the batch means. Requires 1 <= capacity <= m, accesses >= 1000.
SimEstimate simulate_lru(const Popularity& pop, int capacity, std::uint64_t warmup,
                         std::uint64_t accesses, std::uint64_t seed);

// Mean number of draws until j distinct items have been seen; std_error is
// sample-std / sqrt(trials). Requires 1 <= j <= m, trials >= 1000.
SimEstimate simulate_ccp(const Popularity& pop, int j, std::uint64_t trials,
                         std::uint64_t seed);

}  // namespace irm

#endif
