#pragma once

// Independent reference computations used by the tests. None of these call the
// library's CVaR, VaR or quadrature code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

namespace riskol::reference {

struct GridMinimum {
  double nu = 0.0;
  double value = std::numeric_limits<double>::infinity();
  double spacing = 0.0;
};

inline double dual_objective(const std::vector<double>& xs, double alpha, double nu) {
  double hinge = 0.0;
  for (double x : xs) hinge += std::max(x - nu, 0.0);
  return nu + hinge / (alpha * static_cast<double>(xs.size()));
}

/// Minimizes the dual objective over an equally spaced nu-grid spanning the samples.
inline GridMinimum brute_force_dual(const std::vector<double>& xs, double alpha, std::size_t points) {
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  GridMinimum best;
  best.spacing = points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
  // Objective is piecewise linear with kinks at samples; evaluate incrementally.
  std::vector<double> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> suffix(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;) suffix[i] = suffix[i + 1] + sorted[i];
  const double scale = 1.0 / (alpha * static_cast<double>(xs.size()));
  std::size_t above = 0;  // index of first sample > nu
  for (std::size_t k = 0; k < points; ++k) {
    const double nu = k + 1 == points ? hi : lo + best.spacing * static_cast<double>(k);
    while (above < sorted.size() && sorted[above] <= nu) ++above;
    const double count = static_cast<double>(sorted.size() - above);
    const double v = nu + scale * (suffix[above] - count * nu);
    if (v < best.value) {
      best.value = v;
      best.nu = nu;
    }
  }
  return best;
}

/// Plain sample-average CVaR estimate from a large Monte Carlo sample via the
/// sorted-tail formula with fractional boundary weight.
inline double monte_carlo_cvar(std::vector<double> xs, double alpha) {
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const double mass = alpha * static_cast<double>(xs.size());
  double acc = 0.0;
  double taken = 0.0;
  for (double x : xs) {
    const double w = std::min(1.0, mass - taken);
    if (w <= 0.0) break;
    acc += w * x;
    taken += w;
  }
  return acc / mass;
}

/// E[(xi + A x - r)^2] + (v/2) x^2 for xi ~ U[lo, hi].
inline double parking_mean_cost(double x, double target, double lo, double hi, double elasticity = -0.15,
                                double regularization = 0.005) {
  const double mu = 0.5 * (lo + hi);
  const double var = (hi - lo) * (hi - lo) / 12.0;
  const double m = mu + elasticity * x - target;
  return m * m + var + 0.5 * regularization * x * x;
}

inline std::vector<double> uniform_batch(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

}  // namespace riskol::reference
