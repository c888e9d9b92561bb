#include "riskol/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "riskol/distributions.hpp"
#include "riskol/oracle.hpp"

namespace riskol {

SmoothingParams::SmoothingParams(double delta, std::size_t dimension) : delta_(delta), dimension_(dimension) {
  if (!(delta > 0.0)) throw std::invalid_argument("smoothing radius must be positive");
  if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
}

GradientEstimate first_order_gradient(const SampleBatch& batch, RiskLevel alpha) {
  if (!batch.grads) throw std::invalid_argument("first-order estimator requires gradients");
  const auto& grads = *batch.grads;
  if (grads.size() != batch.costs.size()) {
    throw std::invalid_argument("gradient count does not match cost count");
  }
  const auto dist = build_empirical(batch.costs);
  const double nu = var_estimate(dist, alpha);
  const std::size_t n = batch.size();
  const std::size_t d = grads.front().size();

  GradientEstimate out;
  out.kind = EstimatorKind::first_order;
  out.g.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (grads[i].size() != d) throw std::invalid_argument("inconsistent gradient dimension");
    if (batch.costs[i] >= nu) {
      ++out.active_count;
      for (std::size_t k = 0; k < d; ++k) out.g[k] += grads[i][k];
    }
  }
  const double scale = 1.0 / (static_cast<double>(n) * alpha.value());
  for (double& gk : out.g) {
    gk *= scale;
    if (!std::isfinite(gk)) throw std::invalid_argument("non-finite gradient estimate");
  }
  return out;
}

Vector sample_unit_sphere(std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("sphere dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(d);
  double r = 0.0;
  while (!(r > 1e-300)) {
    for (double& ui : u) ui = normal(rng);
    r = norm(u);
  }
  for (double& ui : u) ui /= r;
  return u;
}

GradientEstimate zeroth_order_gradient(double cvar_value, std::span<const double> u,
                                       const SmoothingParams& params) {
  if (!std::isfinite(cvar_value)) throw std::invalid_argument("non-finite CVaR value");
  if (u.size() != params.dimension()) throw std::invalid_argument("direction dimension mismatch");
  const double scale = static_cast<double>(params.dimension()) / params.delta() * cvar_value;
  GradientEstimate out;
  out.kind = EstimatorKind::zeroth_order;
  out.g.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.g[i] = scale * u[i];
  return out;
}

double smoothed_value(const std::function<double(std::span<const double>)>& f, std::span<const double> x,
                      const SmoothingParams& params, std::size_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("smoothing needs at least one draw");
  if (x.size() != params.dimension()) throw std::invalid_argument("point dimension mismatch");
  Vector probe(x.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const Vector u = sample_unit_sphere(x.size(), rng);
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + params.delta() * u[i];
    sum += f(probe);
  }
  return sum / static_cast<double>(m);
}

double smoothed_cvar_oracle(const Scenario& scenario, int t, std::span<const double> x,
                            const SmoothingParams& params, std::size_t m, Rng& rng, std::size_t quad_points) {
  return smoothed_value([&](std::span<const double> p) { return true_cvar(scenario, t, p, quad_points); }, x,
                        params, m, rng);
}

}  // namespace riskol
