#include "irm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "irm/util.hpp"

namespace irm {

namespace {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK
// dqk15 constants). Nodes are interior, so the integrand is never evaluated
// at the endpoints of an interval.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Integrand {
  std::vector<double> exponents;  // c * p_i for i in J
  double c = 1.0;                 // 1 / (1 - q_J)

  // The transformed integrand c * v^(c-1) * prod (v^(-c p_i) - 1).
  double operator()(double v) const {
    if (v <= 0.0) return c;  // the v -> 0 limit
    if (v >= 1.0) return 0.0;
    const double t = std::log(v);

    // the v^(c-1) factor alone can underflow for large c
    bool overflow = (c - 1.0) * t < -700.0;
    double prod = 1.0;
    for (double e : exponents) {
      if (overflow) break;
      const double f = std::expm1(-e * t);
      if (f > 1e10) {
        overflow = true;
        break;
      }
      prod *= f;
    }
    if (!overflow) return c * std::pow(v, c - 1.0) * prod;

    // Large factors: evaluate the whole product in log space. The big
    // positive log terms cancel against (c-1) log v by construction, so the
    // final exponent stays moderate even when single factors overflow.
    double lg = std::log(c) + (c - 1.0) * t;
    for (double e : exponents) {
      const double y = -e * t;  // >= 0
      lg += (y > 700.0) ? y + std::log1p(-std::exp(-y)) : std::log(std::expm1(y));
    }
    return std::exp(lg);
  }
};

struct Interval {
  double a = 0.0;
  double b = 0.0;
  double kronrod = 0.0;
  double err = 0.0;

  bool operator<(const Interval& o) const { return err < o.err; }
};

Interval evaluate(const Integrand& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double kron = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double off = half * kNodes[i];
    const double fsum = (i == 7) ? f(mid) : f(mid - off) + f(mid + off);
    kron += kKronrodW[i] * fsum;
    if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult i_integral(const Popularity& pop, SubsetIndex s, double tol,
                            std::uint64_t budget) {
  const int m = pop.item_count();
  const int k = s.size();
  if (k < 1 || k > m - 1)
    throw std::invalid_argument("i_integral: subset size out of [1, m-1]");
  if (!(tol >= 1e-12 && tol <= 1e-3))
    throw std::invalid_argument("i_integral: tolerance out of [1e-12, 1e-3]");
  const double cmass = subset_complement_mass(pop, s);
  if (!(cmass > 0.0))
    throw std::invalid_argument("i_integral: subset carries the whole mass");

  Integrand f;
  f.c = 1.0 / cmass;
  for (std::uint32_t rest = s.mask; rest; rest &= rest - 1)
    f.exponents.push_back(f.c * pop.prob(std::countr_zero(rest)));

  constexpr int seed_intervals = 8;

  std::priority_queue<Interval> queue;
  std::uint64_t evaluations = 0;
  double total_err = 0.0;
  for (int i = 0; i < seed_intervals; ++i) {
    Interval iv = evaluate(f, static_cast<double>(i) / seed_intervals,
                           static_cast<double>(i + 1) / seed_intervals);
    evaluations += 15;
    total_err += iv.err;
    queue.push(iv);
  }

  while (total_err > tol && evaluations + 30 <= budget) {
    const Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = evaluate(f, worst.a, mid);
    Interval right = evaluate(f, mid, worst.b);
    evaluations += 30;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
  }

  CompensatedSum value;
  CompensatedSum err;
  while (!queue.empty()) {
    value.add(queue.top().kronrod);
    err.add(queue.top().err);
    queue.pop();
  }

  QuadratureResult result{value.value(), err.value(), evaluations};
  if (result.error_estimate > tol)
    throw tolerance_not_reached(
        "i_integral: budget of " + std::to_string(budget) +
        " evaluations reached error " + std::to_string(result.error_estimate) +
        " > tol " + std::to_string(tol));
  return result;
}

}  // namespace irm
