#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "riskol/scenario.hpp"
#include "riskol/types.hpp"

namespace riskol {

enum class EstimatorKind { first_order, zeroth_order };

struct GradientEstimate {
  Vector g;
  EstimatorKind kind = EstimatorKind::first_order;
  /// Number of samples whose cost reached the VaR estimate (first-order only).
  std::size_t active_count = 0;
};

/// Costs J_t(x, xi_i) with, for first-order feedback, the matching gradients.
struct SampleBatch {
  std::vector<double> costs;
  std::optional<std::vector<Vector>> grads;

  std::size_t size() const { return costs.size(); }
};

/// Perturbation radius and decision dimension of the sphere-smoothed CVaR.
class SmoothingParams {
 public:
  SmoothingParams(double delta, std::size_t dimension);

  double delta() const { return delta_; }
  std::size_t dimension() const { return dimension_; }

 private:
  double delta_;
  std::size_t dimension_;
};

/// g = 1/(n alpha) * sum_i 1{J_i >= nu_hat} grad J_i with nu_hat the empirical VaR.
GradientEstimate first_order_gradient(const SampleBatch& batch, RiskLevel alpha);

/// Uniform direction on the unit sphere in R^d (normalized Gaussian vector).
Vector sample_unit_sphere(std::size_t d, Rng& rng);

/// g = (d / delta) * cvar_value * u.
GradientEstimate zeroth_order_gradient(double cvar_value, std::span<const double> u,
                                       const SmoothingParams& params);

/// Monte Carlo estimate of E_u[f(x + delta u)] over m sphere draws.
double smoothed_value(const std::function<double(std::span<const double>)>& f, std::span<const double> x,
                      const SmoothingParams& params, std::size_t m, Rng& rng);

/// Monte Carlo estimate of the smoothed CVaR C_t^delta(x), using the quadrature
/// oracle for C_t. The caller keeps x + delta u inside the feasible set.
double smoothed_cvar_oracle(const Scenario& scenario, int t, std::span<const double> x,
                            const SmoothingParams& params, std::size_t m, Rng& rng,
                            std::size_t quad_points = 129);

}  // namespace riskol
