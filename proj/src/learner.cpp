#include "riskol/learner.hpp"

#include <cmath>
#include <stdexcept>

#include "riskol/distributions.hpp"

namespace riskol {

SamplingSchedule::SamplingSchedule(Kind kind, std::function<std::size_t(int)> n_at, double a, double c)
    : kind_(kind), n_at_(std::move(n_at)), a_(a), c_(c) {
  if (!(a > 0.0) || !(c > 0.0)) throw std::invalid_argument("budget parameters a and c must be positive");
}

SamplingSchedule SamplingSchedule::constant(std::size_t n, double a, double c) {
  if (n == 0) throw std::invalid_argument("sample count must be >= 1");
  return SamplingSchedule(Kind::constant, [n](int) { return n; }, a, c);
}

SamplingSchedule SamplingSchedule::growing(double a, double c) {
  return SamplingSchedule(Kind::growing, [](int t) { return static_cast<std::size_t>(std::max(t, 1)); }, a, c);
}

SamplingSchedule SamplingSchedule::custom(std::function<std::size_t(int)> n_at, double a, double c) {
  if (!n_at) throw std::invalid_argument("custom schedule needs a sample-count function");
  return SamplingSchedule(Kind::custom, std::move(n_at), a, c);
}

std::size_t SamplingSchedule::at(int t) const {
  const std::size_t n = n_at_(t);
  if (n == 0) throw std::invalid_argument("sampling schedule produced n_t = 0");
  return n;
}

BudgetReport validate_budget(const SamplingSchedule& schedule, int horizon) {
  BudgetReport report;
  for (int t = 1; t <= horizon; ++t) report.lhs += 1.0 / std::sqrt(static_cast<double>(schedule.at(t)));
  report.rhs = schedule.c() * std::pow(static_cast<double>(horizon), 1.0 - schedule.a() / 2.0);
  report.ok = report.lhs <= report.rhs * (1.0 + 1e-12);
  return report;
}

std::size_t constant_schedule_for_budget(int horizon, double a, double c) {
  if (!(a > 0.0) || !(c > 0.0)) throw std::invalid_argument("budget parameters a and c must be positive");
  const double exact = std::pow(static_cast<double>(horizon), a) / (c * c);
  const double nearest = std::round(exact);
  const double snapped = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : exact;
  auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(snapped)));
  const auto fits = [&](std::size_t k) {
    return validate_budget(SamplingSchedule::constant(k, a, c), horizon).ok;
  };
  while (!fits(n)) ++n;
  return n;
}

namespace {

void check_config(const LearnerConfig& config, const FeasibleSet& set) {
  if (!(config.eta > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!config.risk) throw std::invalid_argument("learner needs a risk-level schedule");
  if (config.mode == LearnerMode::zeroth_order) {
    if (!(config.delta > 0.0)) throw std::invalid_argument("zeroth-order learner needs delta > 0");
    if (config.delta >= set.inscribed_radius()) {
      throw std::invalid_argument("smoothing radius exceeds inscribed radius");
    }
  }
}

Vector descend(std::span<const double> x, double eta, std::span<const double> g) {
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= eta * g[i];
  return y;
}

}  // namespace

LearnerState initial_state(const LearnerConfig& config, const FeasibleSet& set, std::span<const double> x1) {
  check_config(config, set);
  if (x1.size() != set.dimension()) throw std::invalid_argument("initial point dimension mismatch");
  LearnerState state;
  state.t = 1;
  state.x = config.mode == LearnerMode::zeroth_order ? project(shrink_set(set, config.delta), x1) : project(set, x1);
  return state;
}

StepOutcome step_first_order(const LearnerState& state, const LearnerConfig& config, const FeasibleSet& set,
                             const SampleBatch& feedback) {
  const RiskLevel alpha(config.risk(state.t));
  const auto estimate = first_order_gradient(feedback, alpha);
  if (estimate.g.size() != state.x.size()) throw std::invalid_argument("gradient dimension mismatch");

  StepOutcome out;
  out.record.t = state.t;
  out.record.x = state.x;
  out.record.x_hat = state.x;
  out.record.g = estimate.g;
  out.record.var_estimate = var_estimate(build_empirical(feedback.costs), alpha);
  out.record.n = feedback.size();
  out.record.alpha = alpha.value();
  out.record.active_count = estimate.active_count;

  out.next.t = state.t + 1;
  out.next.x = project(set, descend(state.x, config.eta, estimate.g));
  return out;
}

StepOutcome step_zeroth_order(const LearnerState& state, const LearnerConfig& config, const FeasibleSet& set,
                              const CostQuery& query, Rng& rng) {
  const RiskLevel alpha(config.risk(state.t));
  const FeasibleSet shrunk = shrink_set(set, config.delta);
  const SmoothingParams smoothing(config.delta, set.dimension());

  const Vector u = sample_unit_sphere(set.dimension(), rng);
  Vector x_hat(state.x);
  for (std::size_t i = 0; i < x_hat.size(); ++i) x_hat[i] += config.delta * u[i];
  if (!set.contains(x_hat, 1e-9)) throw std::logic_error("perturbed action left the feasible set");

  const std::size_t n = config.schedule.at(state.t);
  const auto dist = build_empirical(query(x_hat, n));
  const double cvar_hat = cvar(dist, alpha);
  const auto estimate = zeroth_order_gradient(cvar_hat, u, smoothing);

  StepOutcome out;
  out.record.t = state.t;
  out.record.x = state.x;
  out.record.x_hat = x_hat;
  out.record.u = u;
  out.record.g = estimate.g;
  out.record.cvar_estimate = cvar_hat;
  out.record.n = n;
  out.record.alpha = alpha.value();

  out.next.t = state.t + 1;
  out.next.x = project(shrunk, descend(state.x, config.eta, estimate.g));
  return out;
}

FirstOrderParams select_params_first_order(int horizon, double v_alpha, double v_f) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  double v = v_alpha + v_f;
  if (!(v > 0.0)) v = 1.0;
  const double T = static_cast<double>(horizon);
  return {std::cbrt(v / T), std::pow(T / v, 2.0 / 3.0)};
}

ZerothOrderParams select_params_zeroth_order(int horizon, double v_alpha, double v_f, double a,
                                             double inscribed_radius) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("budget exponent a must be positive");
  double v = v_alpha + v_f;
  if (!(v > 0.0)) v = 1.0;
  const double T = static_cast<double>(horizon);
  ZerothOrderParams p;
  if (a <= 0.8) {
    p.delta = std::pow(T, -a / 4.0) * std::pow(v, 0.2);
    p.eta = std::pow(T, -3.0 * a / 4.0) * std::pow(v, 0.6);
    p.interval = std::pow(T, a) * std::pow(v, -0.8);
  } else {
    p.delta = std::pow(T, -0.2) * std::pow(v, 0.2);
    p.eta = std::pow(T, -0.6) * std::pow(v, 0.6);
    p.interval = std::pow(T, 0.8) * std::pow(v, -0.8);
  }
  p.delta = std::min(p.delta, 0.9 * inscribed_radius);
  return p;
}

}  // namespace riskol
