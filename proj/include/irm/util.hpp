#ifndef IRM_UTIL_HPP
#define IRM_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace irm {

// Neumaier-compensated accumulator. Layer sums can run to ~10^5 terms of
// mixed magnitude; plain summation would eat into the 1e-10 identity
// tolerances the formula cross-checks are held to.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

// C(n, k) for n <= 63 (largest n whose full row fits in uint64).
std::uint64_t binomial(int n, int k);

// sum_{k=lo..hi} 1/k, compensated. harmonic(n) == harmonic_range(1, n).
double harmonic_range(int lo, int hi);
double harmonic(int n);

}  // namespace irm

#endif
