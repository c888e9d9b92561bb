#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskol/distributions.hpp"
#include "riskol/feasible_set.hpp"
#include "riskol/scenario.hpp"

namespace riskol {

struct OracleResolution {
  std::size_t grid_points = 1001;
  std::size_t refine_points = 201;
  std::size_t quad_points = 129;
};

/// Law of J_t(x, xi) under the noise: the support is cut into quad_points
/// equal-mass cells, J is evaluated at the cell edges and taken as linear
/// inside each cell. A point-mass noise gives a single atom.
PiecewiseUniformLaw cost_law(const Scenario& scenario, int t, std::span<const double> x, std::size_t quad_points = 129);

/// C_t(x) = CVaR_{alpha_t}[J_t(x, xi)] under the known noise law.
double true_cvar(const Scenario& scenario, int t, std::span<const double> x, std::size_t quad_points = 129);
double true_cvar(const Scenario& scenario, int t, std::span<const double> x, RiskLevel alpha,
                 std::size_t quad_points = 129);

struct Optimum {
  Vector x;
  double value = 0.0;
  /// Coarse-stage argmin and the spacings of both grid stages.
  Vector coarse_x;
  double coarse_spacing = 0.0;
  double fine_spacing = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Two-stage grid minimization over the set (d <= 2): a coarse grid, then a
/// fine grid on the cells adjacent to the coarse argmin.
Optimum grid_minimize(const Objective& f, const FeasibleSet& set, const OracleResolution& res = {});

/// Two-stage grid search of C_t over the set (d <= 2): a coarse grid, then a
/// fine grid on the cells adjacent to the coarse argmin.
Optimum best_decision(const Scenario& scenario, int t, const FeasibleSet& set, const OracleResolution& res = {});

/// Caches per-step optima by scenario regime and serves C_t evaluations.
/// Keeps a reference to the scenario, which must outlive the oracle.
class RegretOracle {
 public:
  RegretOracle(const Scenario& scenario, FeasibleSet set, OracleResolution res = {});

  const Scenario& scenario() const { return scenario_; }
  const FeasibleSet& set() const { return set_; }
  const OracleResolution& resolution() const { return res_; }

  double cvar(int t, std::span<const double> x) const;
  /// Thread-safe; computes on first request for the step's regime.
  Optimum optimum(int t);
  /// Computes every step's optimum up front on `threads` workers.
  void precompute(unsigned threads = 0);

 private:
  Vector key(int t) const;

  const Scenario& scenario_;
  FeasibleSet set_;
  OracleResolution res_;
  std::mutex mutex_;
  std::map<Vector, Optimum> cache_;
};

struct RegretStep {
  int t = 0;
  Vector action;
  double cvar_action = 0.0;
  double cvar_opt = 0.0;
  Vector x_opt;
  double gap = 0.0;
  double cumulative = 0.0;
};

struct RegretTrace {
  std::vector<RegretStep> steps;
  double total() const { return steps.empty() ? 0.0 : steps.back().cumulative; }
};

/// Per-step gaps C_t(action_t) - C_t(x_t*) and their running sum; actions[t-1]
/// is the decision (first-order) or played action (zeroth-order) at step t.
RegretTrace dynamic_regret(std::span<const Vector> actions, RegretOracle& oracle);
RegretTrace dynamic_regret(std::span<const Vector> actions, const Scenario& scenario, const FeasibleSet& set,
                           const OracleResolution& res = {});

/// max |J_t(x, xi)| over steps, the x-grid and the xi-quadrature nodes.
double cost_bound(const Scenario& scenario, const FeasibleSet& set, std::size_t grid_points = 1001,
                  std::size_t quad_points = 129);

enum class BoundKind {
  dkw,
  var_bound,
  grad_error_bound,
  risk_variation_bound,
  function_variation_bound,
  cvar_distance_bound
};

std::string to_string(BoundKind kind);

struct BoundReport {
  BoundKind name = BoundKind::dkw;
  double measured = 0.0;
  double bound = 0.0;
  bool ok = false;
  /// Failure probability of high-probability bounds.
  std::optional<double> confidence;
};

BoundReport make_report(BoundKind name, double measured, double bound, std::optional<double> confidence = {});

/// sqrt(ln(2 / gamma_bar) / (2 n)).
double dkw_epsilon(std::size_t n, double gamma_bar);

/// sqrt(ln(2 / gamma_bar)) / (p_lower sqrt(2 n)).
double lemma3_var_epsilon(std::size_t n, double gamma_bar, double p_lower);

/// G L_g sqrt(ln(2 T / gamma)) / (alpha p_lower sqrt(2 n)).
double lemma3_grad_bound(double grad_bound, double cdf_lipschitz, int horizon, double gamma, RiskLevel alpha,
                         double p_lower, std::size_t n);

/// |1/alpha1 - 1/alpha2| U.
double lemma4_bound(double cost_bound, RiskLevel a1, RiskLevel a2);

/// (1/alpha) E_xi |J_a(x, xi) - J_b(x, xi)| by quadrature over the shared noise law.
double lemma5_bound(const Scenario& a, const Scenario& b, int t, std::span<const double> x, RiskLevel alpha,
                    std::size_t quad_points = 129);
/// Same bound for two costs evaluated on a shared equally weighted discrete law.
double lemma5_bound(std::span<const double> costs_a, std::span<const double> costs_b, RiskLevel alpha);

/// (U / alpha) sup_y |F(y) - G(y)|.
double lemma7_bound(double cost_bound, RiskLevel alpha, double sup_distance);

/// Lower and upper bounds of the density of J_t(x, xi) for the parking cost
/// (xi - c)^2 + k with uniform xi; the upper bound is infinite when the
/// vertex c lies in the noise support.
struct DensityBounds {
  double p_lower = 0.0;
  double lipschitz = 0.0;
};
DensityBounds parking_density_bounds(const Scenario& scenario, int t, double price);

}  // namespace riskol
