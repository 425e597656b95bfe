#include "irm/util.hpp"

#include <array>

namespace irm {

namespace {

constexpr int kMaxN = 63;

std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> build_pascal() {
  std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> c{};
  for (int n = 0; n <= kMaxN; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
  }
  return c;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  static const auto table = build_pascal();
  if (n < 0 || n > kMaxN)
    throw std::invalid_argument("binomial: n out of [0, 63]");
  if (k < 0 || k > n) return 0;
  return table[n][k];
}

double harmonic_range(int lo, int hi) {
  if (lo < 1) throw std::invalid_argument("harmonic_range: lo < 1");
  CompensatedSum s;
  for (int k = hi; k >= lo; --k) s.add(1.0 / k);
  return s.value();
}

double harmonic(int n) { return n <= 0 ? 0.0 : harmonic_range(1, n); }

}  // namespace irm
