#ifndef IRM_CCP_HPP
#define IRM_CCP_HPP

#include <optional>
#include <vector>

#include "irm/popularity.hpp"
#include "irm/subsets.hpp"

namespace irm {

struct CcpEntry {
  int j = 0;
  double e_layers = 0.0;
  std::optional<double> e_symmetric;  // absent when skipped (cost gate)
  std::optional<double> e_ferrante;   // absent beyond the permutation cap
  std::optional<double> delta_e;      // absent at j = m
};

// Expected waiting times of partial coupon collections, one row per
// collection size, with each independently computed form recorded.
struct CcpCurve {
  int m = 0;
  std::vector<CcpEntry> entries;
};

// E{C_j}: expected number of draws until j distinct items have been seen,
// as the cumulative layer sum  sum_{0 <= |J| < j} I_J.
// Requires 0 <= j <= m and table.max_size() >= j-1 (j = m only ever needs
// layer m-1, so the full-set singularity never arises).
double expected_partial_time(const ITable& table, int j);

// The increment E{C_{j+1}} - E{C_j} = sum_{|J|=j} I_J (single layer sum).
// Requires 0 <= j <= m-1.
double delta_expected_time(const ITable& table, int j);

// The alternating symmetric-function expression
//   E{C_j} = sum_{k=m-j+1..m} (-1)^(j+k-m-1) C(k-1, m-j) sum_{|J|=k} 1/P_J.
// The alternating sum cancels catastrophically in floating point, so it is
// evaluated in exact rational arithmetic (the stored doubles are exact
// rationals) and rounded once at the end. Requires 1 <= j <= m and m <= 20.
double symmetric_function_form(const Popularity& pop, int j);

// The conditional-probability form: E = sum_{s=1..k} E_s where E_s is the
// direct permutation sum over ordered (s-1)-tuples of distinct items. Kept
// on its own enumeration path (never reads an ITable) so it stays an
// independent route. Requires 1 <= k <= m and k-1 <= 8.
double ferrante_form(const Popularity& pop, int k);

// Uniform closed form m * (H_m - H_{m-j}). Requires 0 <= j <= m.
double uniform_expected_time(int m, int j);

// Classical inclusion-exclusion value of the full collection time
//   sum_{nonempty J} (-1)^(|J|+1) / P_J,
// an oracle independent of every route above. Requires m <= 24.
double full_collection_inclusion_exclusion(const Popularity& pop);

// Rows j = j_lo..j_hi. e_symmetric is filled when 1 <= j and m <= 12,
// e_ferrante when 1 <= j <= 9, delta_e when j <= m-1.
CcpCurve ccp_curve(const Popularity& pop, int j_lo, int j_hi);

}  // namespace irm

#endif
