#include <gtest/gtest.h>

#include <cmath>

#include "riskol/catalog.hpp"
#include "riskol/learner.hpp"

using namespace riskol;

namespace {

LearnerConfig first_order(double eta, double alpha = 1.0) {
  LearnerConfig c;
  c.mode = LearnerMode::first_order;
  c.eta = eta;
  c.risk = [alpha](int) { return alpha; };
  return c;
}

LearnerConfig zeroth_order(double eta, double delta, std::size_t n = 4) {
  LearnerConfig c;
  c.mode = LearnerMode::zeroth_order;
  c.eta = eta;
  c.delta = delta;
  c.schedule = SamplingSchedule::constant(n);
  c.risk = [](int) { return 0.5; };
  return c;
}

SampleBatch one_gradient(double g) { return SampleBatch{{1.0}, std::vector<Vector>{{g}}}; }

}  // namespace

TEST(StepFirstOrder, Examples) {
  const auto set = FeasibleSet::interval(0.0, 10.0);
  const auto cfg = first_order(0.1);
  LearnerState s{1, {5.0}};
  EXPECT_EQ(step_first_order(s, cfg, set, one_gradient(0.0)).next.x, Vector{5.0});
  EXPECT_NEAR(step_first_order(s, cfg, set, one_gradient(2.0)).next.x[0], 4.8, 1e-15);
  LearnerState edge{1, {0.1}};
  EXPECT_EQ(step_first_order(edge, first_order(1.0), set, one_gradient(2.0)).next.x, Vector{0.0});
}

TEST(StepFirstOrder, RecordsEstimates) {
  const auto set = FeasibleSet::interval(0.0, 10.0);
  LearnerState s{7, {5.0}};
  SampleBatch b{{1, 2, 3, 4}, std::vector<Vector>{{1}, {1}, {1}, {1}}};
  const auto out = step_first_order(s, first_order(0.5, 0.5), set, b);
  EXPECT_EQ(out.record.t, 7);
  EXPECT_EQ(out.next.t, 8);
  EXPECT_EQ(*out.record.var_estimate, 2.0);
  EXPECT_DOUBLE_EQ(out.record.g[0], 1.5);
  EXPECT_EQ(out.record.n, 4u);
  EXPECT_EQ(out.record.alpha, 0.5);
  EXPECT_NEAR(out.next.x[0], 5.0 - 0.75, 1e-15);
}

TEST(StepZerothOrder, ZeroCvarKeepsDecision) {
  const auto set = FeasibleSet::interval(0.0, 10.0);
  const auto cfg = zeroth_order(1.0, 0.5);
  Rng rng(1);
  LearnerState s{1, {3.0}};
  const CostQuery zero = [](std::span<const double>, std::size_t n) { return std::vector<double>(n, 0.0); };
  const auto out = step_zeroth_order(s, cfg, set, zero, rng);
  EXPECT_EQ(out.next.x, Vector{3.0});
  EXPECT_NEAR(std::abs(out.record.x_hat[0] - 3.0), 0.5, 1e-15);
  EXPECT_EQ(*out.record.cvar_estimate, 0.0);
}

TEST(StepZerothOrder, PlaysInsideSetAndStaysInShrunkSet) {
  const auto set = FeasibleSet::interval(0.0, 10.0);
  const auto cfg = zeroth_order(50.0, 1.0);
  const auto inner = shrink_set(set, 1.0);
  Rng rng(2);
  // A cost that pushes hard toward either boundary.
  const CostQuery query = [](std::span<const double> x, std::size_t n) {
    return std::vector<double>(n, 10.0 - x[0]);
  };
  LearnerState s = initial_state(cfg, set, Vector{0.0});
  EXPECT_EQ(s.x, Vector{1.0});
  for (int t = 0; t < 200; ++t) {
    const auto out = step_zeroth_order(s, cfg, set, query, rng);
    ASSERT_TRUE(set.contains(out.record.x_hat));
    ASSERT_TRUE(inner.contains(out.next.x));
    EXPECT_EQ(out.record.n, 4u);
    s = out.next;
  }
}

TEST(InitialState, ValidatesConfig) {
  const auto set = FeasibleSet::interval(0.0, 10.0);
  EXPECT_THROW(initial_state(first_order(0.0), set, Vector{1.0}), std::invalid_argument);
  EXPECT_THROW(initial_state(zeroth_order(1.0, 0.0), set, Vector{1.0}), std::invalid_argument);
  EXPECT_THROW(initial_state(zeroth_order(1.0, 5.0), set, Vector{1.0}), std::invalid_argument);
  EXPECT_EQ(initial_state(first_order(1.0), set, Vector{12.0}).x, Vector{10.0});
}

TEST(Learner, FeasibilityContractionAndReplayOnParking) {
  const auto sc = make_builtin_scenario("step");
  auto run = [&](std::uint64_t seed) {
    auto cfg = first_order(4.0);
    cfg.risk = sc.risk;
    Rng rng(seed);
    LearnerState s = initial_state(cfg, sc.set, Vector{0.0});
    std::vector<double> xs;
    for (int t = 1; t <= sc.horizon; ++t) {
      SampleBatch b;
      b.grads.emplace();
      for (int i = 0; i < 8; ++i) {
        const double xi = sc.noise.sample(rng);
        b.costs.push_back(sc.cost(t, s.x, xi));
        b.grads->push_back(sc.gradient(t, s.x, xi));
      }
      const auto out = step_first_order(s, cfg, sc.set, b);
      EXPECT_TRUE(sc.set.contains(out.next.x));
      EXPECT_LE(distance(out.next.x, s.x), cfg.eta * norm(out.record.g) + 1e-15);
      s = out.next;
      xs.push_back(s.x[0]);
    }
    return xs;
  };
  const auto a = run(5);
  EXPECT_EQ(a, run(5));
  EXPECT_NE(a, run(6));
}

TEST(SelectParams, FirstOrderExamples) {
  EXPECT_NEAR(select_params_first_order(1000, 0.5, 0.5).eta, 0.1, 1e-15);
  const auto p = select_params_first_order(8, 1.0, 0.0);
  EXPECT_NEAR(p.eta, 0.5, 1e-15);
  EXPECT_NEAR(p.interval, 4.0, 1e-12);
  EXPECT_NEAR(select_params_first_order(1000, 0.0, 0.0).eta, std::pow(1000.0, -1.0 / 3.0), 1e-15);
}

TEST(SelectParams, ZerothOrderExamples) {
  const auto p = select_params_zeroth_order(100000, 1.0, 0.0, 0.8);
  EXPECT_NEAR(p.delta, 0.1, 1e-12);
  EXPECT_NEAR(p.eta, 1e-3, 1e-15);
  EXPECT_NEAR(p.interval, std::pow(1e5, 0.8), 1e-6);
  const auto q = select_params_zeroth_order(100000, 0.5, 0.5, 1.0);
  EXPECT_NEAR(q.delta, 0.1, 1e-12);
  EXPECT_NEAR(q.eta, 1e-3, 1e-15);
  const auto z = select_params_zeroth_order(32, 0.0, 0.0, 1.0);
  EXPECT_NEAR(z.delta, std::pow(32.0, -0.2), 1e-15);
  EXPECT_NEAR(z.eta, std::pow(32.0, -0.6), 1e-15);
  // Clamped below the inscribed radius.
  EXPECT_NEAR(select_params_zeroth_order(10, 100.0, 0.0, 0.5, 1.0).delta, 0.9, 1e-15);
  EXPECT_THROW(select_params_zeroth_order(10, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(ValidateBudget, Examples) {
  const auto a = validate_budget(SamplingSchedule::constant(4, 1.0, 1.0), 4);
  EXPECT_DOUBLE_EQ(a.lhs, 2.0);
  EXPECT_DOUBLE_EQ(a.rhs, 2.0);
  EXPECT_TRUE(a.ok);
  const auto b = validate_budget(SamplingSchedule::growing(1.0, 2.0), 100);
  double direct = 0.0;
  for (int t = 1; t <= 100; ++t) direct += 1.0 / std::sqrt(t);
  EXPECT_NEAR(b.lhs, direct, 1e-12);
  EXPECT_NEAR(b.lhs, 18.589603, 1e-6);
  EXPECT_DOUBLE_EQ(b.rhs, 20.0);
  EXPECT_TRUE(b.ok);
  const auto c = validate_budget(SamplingSchedule::constant(1, 1.0, 1.0), 100);
  EXPECT_DOUBLE_EQ(c.lhs, 100.0);
  EXPECT_DOUBLE_EQ(c.rhs, 10.0);
  EXPECT_FALSE(c.ok);
}

TEST(ConstantScheduleForBudget, Examples) {
  EXPECT_EQ(constant_schedule_for_budget(100, 1.0, 1.0), 100u);
  EXPECT_EQ(constant_schedule_for_budget(100, 2.0 / 3.0, 1.0), 22u);
  EXPECT_EQ(constant_schedule_for_budget(100, 1.0, 1e6), 1u);
  for (int T : {10, 100, 500, 1000}) {
    for (double a : {0.1, 0.5, 2.0 / 3.0, 1.0, 1.5}) {
      for (double c : {0.5, 1.0, 3.0}) {
        const auto n = constant_schedule_for_budget(T, a, c);
        EXPECT_TRUE(validate_budget(SamplingSchedule::constant(n, a, c), T).ok);
        if (n > 1) EXPECT_FALSE(validate_budget(SamplingSchedule::constant(n - 1, a, c), T).ok);
      }
    }
  }
}

TEST(SamplingSchedule, Validation) {
  EXPECT_THROW(SamplingSchedule::constant(0), std::invalid_argument);
  EXPECT_THROW(SamplingSchedule::constant(3, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SamplingSchedule::constant(3, 1.0, -1.0), std::invalid_argument);
  const auto custom = SamplingSchedule::custom([](int t) { return static_cast<std::size_t>(t % 3); });
  EXPECT_EQ(custom.at(4), 1u);
  EXPECT_THROW(custom.at(3), std::invalid_argument);
  EXPECT_EQ(SamplingSchedule::growing().at(17), 17u);
}
