#include "riskol/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "riskol/quadrature.hpp"

namespace riskol {

double risk_variation(std::span<const double> alphas) {
  double v = 0.0;
  for (std::size_t t = 1; t < alphas.size(); ++t) v += std::abs(alphas[t] - alphas[t - 1]);
  return v;
}

double risk_variation(const Scenario& scenario) {
  std::vector<double> alphas;
  alphas.reserve(static_cast<std::size_t>(scenario.horizon));
  for (int t = 1; t <= scenario.horizon; ++t) alphas.push_back(scenario.alpha(t).value());
  return risk_variation(alphas);
}

FunctionVariation function_variation(const Scenario& scenario, const FeasibleSet& set, std::size_t quad_points,
                                     std::size_t grid_points) {
  if (quad_points < 2 || grid_points < 2) throw std::invalid_argument("variation resolutions must be >= 2");
  const auto rule = noise_quadrature(scenario.noise, quad_points);
  const auto grid = box_grid(set, grid_points);

  FunctionVariation out;
  out.quad_points = quad_points;
  out.grid_points = grid_points;
  for (std::size_t i = 0; i < set.dimension(); ++i) {
    out.grid_spacing = std::max(out.grid_spacing, (set.hi()[i] - set.lo()[i]) / static_cast<double>(grid_points - 1));
  }

  for (int t = 2; t <= scenario.horizon; ++t) {
    if (scenario.regime && scenario.regime(t) == scenario.regime(t - 1)) continue;
    double sup = 0.0;
    for (const auto& x : grid) {
      double expected = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        expected += rule.weights[q] * std::abs(scenario.cost(t, x, xi) - scenario.cost(t - 1, x, xi));
      }
      sup = std::max(sup, expected);
    }
    out.value += sup;
  }
  return out;
}

}  // namespace riskol
