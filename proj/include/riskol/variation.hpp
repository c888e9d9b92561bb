#pragma once

#include <cstddef>
#include <span>

#include "riskol/feasible_set.hpp"
#include "riskol/scenario.hpp"

namespace riskol {

/// V_alpha = sum_{t >= 2} |alpha_t - alpha_{t-1}|.
double risk_variation(std::span<const double> alphas);
double risk_variation(const Scenario& scenario);

struct FunctionVariation {
  double value = 0.0;
  std::size_t quad_points = 0;
  std::size_t grid_points = 0;
  /// Grid spacing of the sup search along the widest coordinate.
  double grid_spacing = 0.0;
};

/// V_f = sum_{t >= 2} sup_{x in grid} E_xi |J_t(x, xi) - J_{t-1}(x, xi)|, with the
/// expectation by fixed quadrature over the noise law.
FunctionVariation function_variation(const Scenario& scenario, const FeasibleSet& set, std::size_t quad_points = 129,
                                     std::size_t grid_points = 1001);

}  // namespace riskol
