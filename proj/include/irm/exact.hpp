#ifndef IRM_EXACT_HPP
#define IRM_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "irm/popularity.hpp"
#include "irm/subsets.hpp"

namespace irm {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

double to_double(const BigRat& r);

// Bit-exact counterpart of Popularity, used as the referee when the
// floating-point routes are compared: every identity below holds as an
// equality of rationals, not merely within a tolerance.
class ExactPopularity {
 public:
  // p_i = w_i / sum w. Zero weights are dropped, mirroring Popularity.
  static ExactPopularity from_integer_weights(const std::vector<std::uint64_t>& weights);

  // Doubles are exact rationals; re-normalizing them in rational space gives
  // a law that sums to 1 exactly and differs from the stored doubles only in
  // the final few ulps of the normalization.
  static ExactPopularity from_popularity(const Popularity& pop);

  int item_count() const { return static_cast<int>(probs_.size()); }
  const BigRat& prob(int i) const { return probs_[static_cast<std::size_t>(i)]; }
  BigRat subset_mass(SubsetIndex s) const;
  BigRat sum_squares() const;

 private:
  explicit ExactPopularity(std::vector<BigRat> probs);
  std::vector<BigRat> probs_;
};

// Layered I_J table over exact rationals. Rational sizes grow quickly with
// m, so builds are limited to m <= 12.
class ExactITable {
 public:
  ExactITable(ExactPopularity pop, int j_max);

  const ExactPopularity& popularity() const { return pop_; }
  int max_size() const { return j_max_; }
  const BigRat& value(SubsetIndex s) const;
  BigRat layer_sum(int k) const;

 private:
  ExactPopularity pop_;
  int j_max_;
  std::vector<std::vector<BigRat>> layers_;
};

BigRat king_miss_rate_exact(const ExactITable& table, int j);
BigRat flajolet_miss_rate_exact(const ExactITable& table, int j);
BigRat expected_partial_time_exact(const ExactITable& table, int j);
BigRat delta_expected_time_exact(const ExactITable& table, int j);
BigRat symmetric_function_form_exact(const ExactPopularity& pop, int j);
BigRat full_collection_exact(const ExactPopularity& pop);

}  // namespace irm

#endif
