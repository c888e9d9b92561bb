#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "riskol/estimators.hpp"
#include "riskol/feasible_set.hpp"
#include "riskol/scenario.hpp"
#include "riskol/types.hpp"

namespace riskol {

/// Per-step sample counts n_t together with the budget parameters (a, c) of
/// the constraint sum_t 1/sqrt(n_t) <= c T^(1 - a/2).
class SamplingSchedule {
 public:
  enum class Kind { constant, growing, custom };

  static SamplingSchedule constant(std::size_t n, double a = 1.0, double c = 1.0);
  /// n_t = t.
  static SamplingSchedule growing(double a = 1.0, double c = 1.0);
  static SamplingSchedule custom(std::function<std::size_t(int)> n_at, double a = 1.0, double c = 1.0);

  Kind kind() const { return kind_; }
  std::size_t at(int t) const;
  double a() const { return a_; }
  double c() const { return c_; }

 private:
  SamplingSchedule(Kind kind, std::function<std::size_t(int)> n_at, double a, double c);

  Kind kind_;
  std::function<std::size_t(int)> n_at_;
  double a_;
  double c_;
};

struct BudgetReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

BudgetReport validate_budget(const SamplingSchedule& schedule, int horizon);

/// Smallest constant n with T / sqrt(n) <= c T^(1 - a/2), i.e. ceil(T^a / c^2).
std::size_t constant_schedule_for_budget(int horizon, double a, double c);

enum class LearnerMode { first_order, zeroth_order };

struct LearnerConfig {
  LearnerMode mode = LearnerMode::first_order;
  double eta = 0.1;
  /// Zeroth-order only; must satisfy 0 < delta < r.
  double delta = 0.0;
  SamplingSchedule schedule = SamplingSchedule::constant(8);
  Schedule risk;
};

struct LearnerState {
  int t = 1;
  Vector x;
};

/// Everything a single update saw and produced.
struct StepRecord {
  int t = 0;
  Vector x;
  /// Played action; equals x for first-order steps.
  Vector x_hat;
  Vector u;
  Vector g;
  std::optional<double> var_estimate;
  std::optional<double> cvar_estimate;
  std::size_t n = 0;
  double alpha = 1.0;
  std::size_t active_count = 0;
};

struct StepOutcome {
  LearnerState next;
  StepRecord record;
};

/// Checks the config against the feasible set and returns the starting state,
/// with x1 projected onto X (first-order) or the shrunken set (zeroth-order).
LearnerState initial_state(const LearnerConfig& config, const FeasibleSet& set, std::span<const double> x1);

/// One iteration of the first-order loop on a batch sampled at state.x:
/// empirical VaR, CVaR gradient estimate, projected descent step.
StepOutcome step_first_order(const LearnerState& state, const LearnerConfig& config, const FeasibleSet& set,
                             const SampleBatch& feedback);

/// Bandit feedback: n i.i.d. cost evaluations at the played action.
using CostQuery = std::function<std::vector<double>(std::span<const double> x_hat, std::size_t n)>;

/// One iteration of the zeroth-order loop: perturb, play n_t times, estimate
/// the CVaR of the played action, form the one-point gradient, project onto
/// the shrunken set.
StepOutcome step_zeroth_order(const LearnerState& state, const LearnerConfig& config, const FeasibleSet& set,
                              const CostQuery& query, Rng& rng);

struct FirstOrderParams {
  double eta = 0.0;
  /// Interval length of the regret analysis; metadata only.
  double interval = 0.0;
};

struct ZerothOrderParams {
  double eta = 0.0;
  double delta = 0.0;
  double interval = 0.0;
};

/// eta = (V/T)^(1/3), interval = (T/V)^(2/3) with V = V_alpha + V_f (V = 0 is treated as 1).
FirstOrderParams select_params_first_order(int horizon, double v_alpha, double v_f);

/// Rates for the zeroth-order loop; delta is clamped to 0.9 * inscribed_radius.
ZerothOrderParams select_params_zeroth_order(int horizon, double v_alpha, double v_f, double a,
                                             double inscribed_radius = std::numeric_limits<double>::infinity());

}  // namespace riskol
