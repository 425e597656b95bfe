#ifndef IRM_POPULARITY_HPP
#define IRM_POPULARITY_HPP

#include <vector>

namespace irm {

// An item popularity law: the fixed probability vector p_1..p_m that drives
// every reference under the independent reference model.
//
// Probabilities are stored in descending order; source_index() maps a stored
// slot back to the position in the weight vector it was built from. All
// quantities reported by the toolkit are invariant under relabeling, so the
// reordering is unobservable except through source_index().
//
// Invariants held after construction:
//   - every p_i > 0 (zero weights are dropped, and m shrinks accordingly)
//   - sum p_i == 1 to within 1e-12 absolute
//   - m >= 1
//   - when m >= 2, max p_i < 1 - 1e-9 (larger values make the 1 - p
//     denominators of the closed forms numerically meaningless)
//
// Immutable after construction; safe to share across threads.
class Popularity {
 public:
  // weights: nonnegative, finite, at least one strictly positive. Zero
  // entries are dropped. Normalization is applied unconditionally.
  static Popularity from_weights(std::vector<double> weights);

  static Popularity uniform(int m);
  // p_i proportional to i^-alpha, i = 1..m, alpha >= 0.
  static Popularity zipf(int m, double alpha);
  // p_i proportional to ratio^(i-1), ratio in (0,1).
  static Popularity geometric(int m, double ratio);

  int item_count() const { return static_cast<int>(probs_.size()); }
  double prob(int i) const { return probs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

  // Position the stored item i occupied in the original weights vector.
  int source_index(int i) const { return order_[static_cast<std::size_t>(i)]; }

  // sum of p_i^2: the capacity-1 hit rate.
  double sum_squares() const;

 private:
  Popularity(std::vector<double> probs, std::vector<int> order);

  std::vector<double> probs_;  // descending
  std::vector<int> order_;
};

}  // namespace irm

#endif
