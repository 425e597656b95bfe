#ifndef IRM_SUBSETS_HPP
#define IRM_SUBSETS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <unordered_map>
#include <vector>

#include "irm/popularity.hpp"
#include "irm/util.hpp"

namespace irm {

// A subset J of the item set {0..m-1}: bit i is set iff item i is in J.
struct SubsetIndex {
  std::uint32_t mask = 0;

  int size() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  bool contains(int i) const { return (mask >> i) & 1u; }

  friend bool operator==(SubsetIndex a, SubsetIndex b) { return a.mask == b.mask; }
};

inline constexpr int max_items = 31;

// Calls f(SubsetIndex) for each size-k subset of {0..m-1} in increasing mask
// order (Gosper's hack). Exactly C(m,k) calls; deterministic.
template <typename F>
void for_each_subset_of_size(int m, int k, F&& f) {
  if (m < 1 || m > max_items)
    throw std::invalid_argument("for_each_subset_of_size: m out of [1, 31]");
  if (k < 0 || k > m)
    throw std::invalid_argument("for_each_subset_of_size: k out of [0, m]");
  if (k == 0) {
    f(SubsetIndex{0});
    return;
  }
  const std::uint32_t bound = std::uint32_t{1} << m;
  std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  for (;;) {
    f(SubsetIndex{mask});
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t carry = mask + low;
    if (carry >= bound) break;
    mask = carry | (((mask ^ carry) >> 2) / low);
  }
}

// All size-k subsets of {0..m-1}, increasing mask order. Throws on k out of
// [0, m] or m out of [1, max_items].
std::vector<SubsetIndex> subsets_of_size(int m, int k);

// Rank of s within its own size layer under increasing-mask order
// (the colexicographic rank: sum of C(bit_t, t+1) over ascending bits).
std::size_t layer_rank(SubsetIndex s);

// q_J: total probability mass of the subset. Throws if the mask has bits at
// or above pop.item_count().
double subset_prob_mass(const Popularity& pop, SubsetIndex s);

// 1 - q_J computed as the direct sum over excluded items, which stays
// accurate when q_J is close to 1.
double subset_complement_mass(const Popularity& pop, SubsetIndex s);

// Per-subset permutation weight I_J: the sum over all orderings of J of
//   prod p / prod (successive partial complements),
// the quantity both miss-rate formulas and the collection-time layer sums
// are built from. I of the empty set is 1.
//
// The table is built layer by layer from the recurrence
//   (1 - q_J) I_J = sum_{i in J} p_i I_{J \ {i}},
// so layer k costs O(C(m,k) * k) instead of the factorial permutation sum.
// Layers 0..max_size are all retained: the capacity-j formulas read layer j
// while the cumulative forms read layers 0..j-1.
class ITable {
 public:
  static constexpr std::size_t default_entry_cap = std::size_t{1} << 27;

  // Requires 0 <= j_max <= m-1 (the full set has q_J = 1 and no finite I).
  // Refuses builds whose total entry count would exceed entry_cap.
  ITable(Popularity pop, int j_max, std::size_t entry_cap = default_entry_cap);

  const Popularity& popularity() const { return pop_; }
  int max_size() const { return j_max_; }

  // I_J for |J| <= max_size(). Bounds-checked.
  double value(SubsetIndex s) const;

  const std::vector<double>& layer(int k) const;
  // Compensated sum of layer k.
  double layer_sum(int k) const;

  std::size_t entry_count() const;
  static std::size_t entries_required(int m, int j_max);

  // Re-walks every stored subset and returns the worst relative residual of
  // (1 - q_J) I_J - sum p_i I_{J\{i}}.
  double max_recurrence_residual() const;

 private:
  Popularity pop_;
  int j_max_;
  std::vector<std::vector<double>> layers_;  // layers_[k][layer_rank]
};

// I_J by explicit enumeration of all |J|! permutations; the brute-force
// oracle the DP is validated against. Requires |J| <= 9 and q_J < 1.
double i_permutation_oracle(const Popularity& pop, SubsetIndex s);

// Explicit value table for pairs (item, subset), as consumed by
// lemma2_check. get() throws std::out_of_range on a missing entry.
class PairTable {
 public:
  void set(int item, SubsetIndex s, double v) { vals_[key(item, s)] = v; }
  double get(int item, SubsetIndex s) const;
  std::size_t size() const { return vals_.size(); }

 private:
  static std::uint64_t key(int item, SubsetIndex s) {
    return (std::uint64_t{static_cast<std::uint32_t>(item)} << 32) | s.mask;
  }
  std::unordered_map<std::uint64_t, double> vals_;
};

// Evaluates both sides of the subset/element double-counting identity
//   sum_{|J|=j} sum_{i not in J} F(i,J) == sum_{|J|=j+1} sum_{i in J} F(i,J\{i})
// independently and returns {lhs, rhs}; the caller asserts equality.
// Requires 1 <= j <= m-1 and f defined on every pair visited.
std::pair<double, double> lemma2_check(int m, int j, const PairTable& f);

}  // namespace irm

#endif
