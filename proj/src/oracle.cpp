#include "riskol/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "riskol/quadrature.hpp"

namespace riskol {

PiecewiseUniformLaw cost_law(const Scenario& scenario, int t, std::span<const double> x, std::size_t quad_points) {
  const auto& noise = scenario.noise;
  switch (noise.kind()) {
    case NoiseLaw::Kind::point_mass: {
      const double j = scenario.cost(t, x, noise.lo());
      return PiecewiseUniformLaw({{j, j, 1.0}});
    }
    case NoiseLaw::Kind::uniform: {
      if (quad_points < 1) throw std::invalid_argument("cost law needs at least one cell");
      const double width = (noise.hi() - noise.lo()) / static_cast<double>(quad_points);
      std::vector<UniformCell> cells;
      cells.reserve(quad_points);
      double left = scenario.cost(t, x, noise.lo());
      for (std::size_t k = 1; k <= quad_points; ++k) {
        const double edge = k == quad_points ? noise.hi() : noise.lo() + width * static_cast<double>(k);
        const double right = scenario.cost(t, x, edge);
        cells.push_back({std::min(left, right), std::max(left, right), 1.0});
        left = right;
      }
      return PiecewiseUniformLaw(std::move(cells));
    }
  }
  throw std::invalid_argument("unsupported noise law");
}

double true_cvar(const Scenario& scenario, int t, std::span<const double> x, RiskLevel alpha,
                 std::size_t quad_points) {
  return cvar(cost_law(scenario, t, x, quad_points), alpha);
}

double true_cvar(const Scenario& scenario, int t, std::span<const double> x, std::size_t quad_points) {
  return true_cvar(scenario, t, x, scenario.alpha(t), quad_points);
}

namespace {

struct GridMin {
  Vector x;
  double value = std::numeric_limits<double>::infinity();
};

GridMin grid_min(const Objective& f, const FeasibleSet& box, std::size_t per_dim) {
  GridMin best;
  for (const auto& x : box_grid(box, per_dim)) {
    const double c = f(x);
    if (c < best.value) {
      best.value = c;
      best.x = x;
    }
  }
  return best;
}

}  // namespace

Optimum grid_minimize(const Objective& f, const FeasibleSet& set, const OracleResolution& res) {
  if (set.dimension() > 2) throw std::invalid_argument("grid oracle limited to low dimension");
  if (res.grid_points < 2 || res.refine_points < 2) throw std::invalid_argument("grid resolution must be >= 2");

  const GridMin coarse = grid_min(f, set, res.grid_points);
  Optimum out;
  out.coarse_x = coarse.x;
  Vector lo(set.dimension());
  Vector hi(set.dimension());
  for (std::size_t i = 0; i < set.dimension(); ++i) {
    const double h = (set.hi()[i] - set.lo()[i]) / static_cast<double>(res.grid_points - 1);
    out.coarse_spacing = std::max(out.coarse_spacing, h);
    lo[i] = std::max(set.lo()[i], coarse.x[i] - h);
    hi[i] = std::min(set.hi()[i], coarse.x[i] + h);
  }
  const GridMin fine = grid_min(f, FeasibleSet::box(lo, hi), res.refine_points);
  for (std::size_t i = 0; i < set.dimension(); ++i) {
    out.fine_spacing = std::max(out.fine_spacing, (hi[i] - lo[i]) / static_cast<double>(res.refine_points - 1));
  }
  const GridMin& best = fine.value <= coarse.value ? fine : coarse;
  out.x = best.x;
  out.value = best.value;
  return out;
}

Optimum best_decision(const Scenario& scenario, int t, const FeasibleSet& set, const OracleResolution& res) {
  const RiskLevel alpha = scenario.alpha(t);
  return grid_minimize([&](std::span<const double> x) { return true_cvar(scenario, t, x, alpha, res.quad_points); },
                       set, res);
}

RegretOracle::RegretOracle(const Scenario& scenario, FeasibleSet set, OracleResolution res)
    : scenario_(scenario), set_(std::move(set)), res_(res) {}

Vector RegretOracle::key(int t) const {
  if (scenario_.regime) return scenario_.regime(t);
  return Vector{static_cast<double>(t)};
}

double RegretOracle::cvar(int t, std::span<const double> x) const {
  return true_cvar(scenario_, t, x, res_.quad_points);
}

Optimum RegretOracle::optimum(int t) {
  const Vector k = key(t);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
  }
  Optimum opt = best_decision(scenario_, t, set_, res_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(k, std::move(opt)).first->second;
}

void RegretOracle::precompute(unsigned threads) {
  // One representative step per regime, in order of first appearance.
  std::vector<int> pending;
  {
    std::map<Vector, bool> seen;
    std::lock_guard lock(mutex_);
    for (int t = 1; t <= scenario_.horizon; ++t) {
      const Vector k = key(t);
      if (cache_.count(k) || seen.count(k)) continue;
      seen.emplace(k, true);
      pending.push_back(t);
    }
  }
  if (pending.empty()) return;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(pending.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < pending.size(); i = next++) optimum(pending[i]);
    });
  }
  for (auto& th : workers) th.join();
}

RegretTrace dynamic_regret(std::span<const Vector> actions, RegretOracle& oracle) {
  const auto& scenario = oracle.scenario();
  if (actions.size() > static_cast<std::size_t>(scenario.horizon)) {
    throw std::invalid_argument("more actions than steps in the horizon");
  }
  RegretTrace trace;
  trace.steps.reserve(actions.size());
  double cumulative = 0.0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    const Optimum opt = oracle.optimum(t);
    RegretStep step;
    step.t = t;
    step.action = actions[i];
    step.cvar_action = oracle.cvar(t, actions[i]);
    step.cvar_opt = opt.value;
    step.x_opt = opt.x;
    step.gap = step.cvar_action - step.cvar_opt;
    cumulative += step.gap;
    step.cumulative = cumulative;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

RegretTrace dynamic_regret(std::span<const Vector> actions, const Scenario& scenario, const FeasibleSet& set,
                           const OracleResolution& res) {
  RegretOracle oracle(scenario, set, res);
  return dynamic_regret(actions, oracle);
}

double cost_bound(const Scenario& scenario, const FeasibleSet& set, std::size_t grid_points, std::size_t quad_points) {
  const auto rule = noise_quadrature(scenario.noise, quad_points);
  const auto grid = box_grid(set, grid_points);
  double u = 0.0;
  std::map<Vector, bool> seen;
  for (int t = 1; t <= scenario.horizon; ++t) {
    if (scenario.regime && !seen.emplace(scenario.regime(t), true).second) continue;
    for (const auto& x : grid) {
      // The support endpoints are included since extremes of J sit there.
      u = std::max(u, std::abs(scenario.cost(t, x, scenario.noise.lo())));
      u = std::max(u, std::abs(scenario.cost(t, x, scenario.noise.hi())));
      for (double xi : rule.nodes) u = std::max(u, std::abs(scenario.cost(t, x, xi)));
    }
  }
  return u;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::dkw: return "dkw";
    case BoundKind::var_bound: return "var_bound";
    case BoundKind::grad_error_bound: return "grad_error_bound";
    case BoundKind::risk_variation_bound: return "risk_variation_bound";
    case BoundKind::function_variation_bound: return "function_variation_bound";
    case BoundKind::cvar_distance_bound: return "cvar_distance_bound";
  }
  return "unknown";
}

BoundReport make_report(BoundKind name, double measured, double bound, std::optional<double> confidence) {
  // Rounding slack for deterministic inequalities that can hold with equality.
  const double slack = 1e-12 * std::max(1.0, std::abs(bound));
  return {name, measured, bound, measured <= bound + slack, confidence};
}

double dkw_epsilon(std::size_t n, double gamma_bar) {
  if (n == 0) throw std::invalid_argument("DKW needs n >= 1");
  if (!(gamma_bar > 0.0 && gamma_bar < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / gamma_bar) / (2.0 * static_cast<double>(n)));
}

double lemma3_var_epsilon(std::size_t n, double gamma_bar, double p_lower) {
  if (n == 0) throw std::invalid_argument("VaR bound needs n >= 1");
  if (!(gamma_bar > 0.0 && gamma_bar < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  if (!(p_lower > 0.0)) throw std::invalid_argument("density lower bound must be positive");
  return std::sqrt(std::log(2.0 / gamma_bar)) / (p_lower * std::sqrt(2.0 * static_cast<double>(n)));
}

double lemma3_grad_bound(double grad_bound, double cdf_lipschitz, int horizon, double gamma, RiskLevel alpha,
                         double p_lower, std::size_t n) {
  if (n == 0 || horizon < 1) throw std::invalid_argument("gradient bound needs n, T >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  if (!(p_lower > 0.0)) throw std::invalid_argument("density lower bound must be positive");
  return grad_bound * cdf_lipschitz * std::sqrt(std::log(2.0 * horizon / gamma)) /
         (alpha.value() * p_lower * std::sqrt(2.0 * static_cast<double>(n)));
}

double lemma4_bound(double cost_bound, RiskLevel a1, RiskLevel a2) {
  if (!(cost_bound > 0.0)) throw std::invalid_argument("cost bound U must be positive");
  return std::abs(1.0 / a1.value() - 1.0 / a2.value()) * cost_bound;
}

double lemma5_bound(const Scenario& a, const Scenario& b, int t, std::span<const double> x, RiskLevel alpha,
                    std::size_t quad_points) {
  if (a.noise.kind() != b.noise.kind() || a.noise.lo() != b.noise.lo() || a.noise.hi() != b.noise.hi()) {
    throw std::invalid_argument("lemma 5 bound needs a shared noise law");
  }
  const auto rule = noise_quadrature(a.noise, quad_points);
  double expected = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    expected += rule.weights[q] * std::abs(a.cost(t, x, rule.nodes[q]) - b.cost(t, x, rule.nodes[q]));
  }
  return expected / alpha.value();
}

double lemma5_bound(std::span<const double> costs_a, std::span<const double> costs_b, RiskLevel alpha) {
  if (costs_a.empty() || costs_a.size() != costs_b.size()) {
    throw std::invalid_argument("lemma 5 bound needs paired, non-empty samples");
  }
  double expected = 0.0;
  for (std::size_t i = 0; i < costs_a.size(); ++i) expected += std::abs(costs_a[i] - costs_b[i]);
  return expected / static_cast<double>(costs_a.size()) / alpha.value();
}

double lemma7_bound(double cost_bound, RiskLevel alpha, double sup_distance) {
  return cost_bound / alpha.value() * sup_distance;
}

DensityBounds parking_density_bounds(const Scenario& scenario, int t, double price) {
  if (!scenario.parking || scenario.noise.kind() != NoiseLaw::Kind::uniform) {
    throw std::invalid_argument("density bounds need the parking model with uniform noise");
  }
  // J = (xi - c)^2 + k with c = r_t - A x; dJ/dxi = 2 (xi - c), density of xi = 1 / w.
  const double lo = scenario.noise.lo();
  const double hi = scenario.noise.hi();
  const double w = hi - lo;
  const double c = scenario.parking->target(t) - scenario.parking->elasticity * price;
  const double far = std::max(std::abs(lo - c), std::abs(hi - c));
  DensityBounds out;
  out.p_lower = 1.0 / (2.0 * w * far);
  if (c >= lo && c <= hi) {
    out.lipschitz = std::numeric_limits<double>::infinity();
  } else {
    out.lipschitz = 1.0 / (2.0 * w * std::min(std::abs(lo - c), std::abs(hi - c)));
  }
  return out;
}

}  // namespace riskol
