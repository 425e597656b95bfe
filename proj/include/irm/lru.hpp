#ifndef IRM_LRU_HPP
#define IRM_LRU_HPP

#include <stdexcept>
#include <vector>

#include "irm/popularity.hpp"
#include "irm/subsets.hpp"

namespace irm {

struct MissRateEntry {
  int capacity = 0;
  double mr_king = 0.0;
  double mr_flajolet = 0.0;
  double discrepancy = 0.0;  // |mr_king - mr_flajolet|
};

// Exact steady-state LRU miss rates per capacity, with the value of each of
// the two formulas recorded side by side.
struct MissRateCurve {
  int m = 0;
  std::vector<MissRateEntry> entries;

  double max_discrepancy() const;
};

// Thrown by verify_identity when the two formulas disagree beyond the
// stated tolerance. Since their equality is a theorem, this always means an
// implementation bug, never an unlucky input.
struct identity_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset form of the 1971 King formula:
//   MR[j] = sum_{|J|=j} (sum_{i not in J} p_i)^2 I_J.
// Requires 1 <= j <= m-1 and table.max_size() >= j.
double king_miss_rate(const ITable& table, int j);

// The unrewritten King sum over all ordered j-tuples of distinct items; an
// independent oracle for the subset form. Requires j <= 8.
double king_miss_rate_bruteforce(const Popularity& pop, int j);

// Subset form of the 1992 Flajolet-Gardy-Thimonier integral formula:
//   MR[j] = 1 - sum_{0 <= |K| < j} I_K (sum_{i not in K} p_i^2).
// Requires 1 <= j <= m and table.max_size() >= j-1. At j = m the hit sum
// telescopes to 1 and the result is 0 up to rounding.
double flajolet_miss_rate(const ITable& table, int j);

// Same miss rate summed from the other end:
//   MR[j] = sum_{j <= |J| < m} I_J (sum_{i not in J} p_i^2).
// Always needs table layers up to m-1.
double miss_rate_complement_form(const ITable& table, int j);

// 1 - j/m, the closed form every route must collapse to on a uniform law.
double uniform_miss_rate(int m, int j);

// Computes both formulas for every capacity 1..j_max from one shared table
// (so any disagreement isolates the summation logic, not the table).
MissRateCurve check_identity(const Popularity& pop, int j_max);

// check_identity, then throws identity_violation if any capacity's
// discrepancy exceeds tol. Returns the curve otherwise.
MissRateCurve verify_identity(const Popularity& pop, int j_max, double tol);

}  // namespace irm

#endif
