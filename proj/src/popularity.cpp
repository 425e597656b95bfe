#include "irm/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "irm/util.hpp"

namespace irm {

namespace {

constexpr double kNearOneLimit = 1.0 - 1e-9;

}  // namespace

Popularity::Popularity(std::vector<double> probs, std::vector<int> order)
    : probs_(std::move(probs)), order_(std::move(order)) {}

Popularity Popularity::from_weights(std::vector<double> weights) {
  if (weights.empty())
    throw std::invalid_argument("popularity: empty weight vector");

  std::vector<std::pair<double, int>> kept;
  kept.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w))
      throw std::invalid_argument("popularity: non-finite weight");
    if (w < 0.0)
      throw std::invalid_argument("popularity: negative weight");
    if (w > 0.0) kept.emplace_back(w, static_cast<int>(i));
  }
  if (kept.empty())
    throw std::invalid_argument("popularity: all weights are zero");

  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  CompensatedSum total;
  for (const auto& [w, idx] : kept) total.add(w);
  const double sum = total.value();
  if (!std::isfinite(sum) || sum <= 0.0)
    throw std::invalid_argument("popularity: weight sum is not a positive finite value");

  std::vector<double> probs;
  std::vector<int> order;
  probs.reserve(kept.size());
  order.reserve(kept.size());
  for (const auto& [w, idx] : kept) {
    probs.push_back(w / sum);
    order.push_back(idx);
  }

  if (probs.size() >= 2 && probs.front() >= kNearOneLimit)
    throw std::invalid_argument(
        "popularity: a probability this close to 1 leaves no precision in the "
        "1 - p denominators");

  return Popularity(std::move(probs), std::move(order));
}

Popularity Popularity::uniform(int m) {
  if (m < 1) throw std::invalid_argument("popularity: m must be >= 1");
  return from_weights(std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

Popularity Popularity::zipf(int m, double alpha) {
  if (m < 1) throw std::invalid_argument("popularity: m must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("popularity: zipf exponent must be >= 0");
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    w[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -alpha);
  return from_weights(std::move(w));
}

Popularity Popularity::geometric(int m, double ratio) {
  if (m < 1) throw std::invalid_argument("popularity: m must be >= 1");
  if (!(ratio > 0.0) || !(ratio < 1.0))
    throw std::invalid_argument("popularity: geometric ratio must lie in (0,1)");
  std::vector<double> w(static_cast<std::size_t>(m));
  double cur = 1.0;
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i)] = cur;
    cur *= ratio;
  }
  return from_weights(std::move(w));
}

double Popularity::sum_squares() const {
  CompensatedSum s;
  for (double p : probs_) s.add(p * p);
  return s.value();
}

}  // namespace irm
