#ifndef IRM_QUADRATURE_HPP
#define IRM_QUADRATURE_HPP

#include <cstdint>
#include <stdexcept>

#include "irm/popularity.hpp"
#include "irm/subsets.hpp"

namespace irm {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::uint64_t evaluations = 0;
};

// Thrown when the evaluation budget runs out before the requested tolerance
// is met; the message carries the achieved estimate.
struct tolerance_not_reached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluates I_J through its integral form
//   integral_0^1 prod_{i in J} (x^{-p_i} - 1) dx
// by adaptive Gauss-Kronrod bisection, entirely independent of the
// recurrence and permutation routes, so it can referee both.
//
// The integrand blows up like x^{-q_J} at 0; the substitution x = v^c with
// c = 1/(1 - q_J) makes the transformed integrand bounded (it tends to c at
// v = 0 and to 0 at v = 1), after which plain adaptive bisection converges.
//
// Requires 1 <= |J| <= m-1 and tol in [1e-12, 1e-3]. Exceeding the
// evaluation budget raises tolerance_not_reached.
QuadratureResult i_integral(const Popularity& pop, SubsetIndex s, double tol,
                            std::uint64_t budget = 10'000'000);

}  // namespace irm

#endif
