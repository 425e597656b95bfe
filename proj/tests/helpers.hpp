#ifndef IRM_TESTS_HELPERS_HPP
#define IRM_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "irm/popularity.hpp"

namespace testutil {

// Dirichlet(1,...,1) draw: normalized exponentials. Strictly positive, so
// no weight is dropped and the item count stays m.
inline irm::Popularity random_popularity(int m, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(m));
  for (auto& x : w) {
    double v = u(eng);
    while (v <= 0.0) v = u(eng);
    x = -std::log(v);
    if (x <= 0.0) x = 1e-300;
  }
  return irm::Popularity::from_weights(w);
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testutil

#endif
