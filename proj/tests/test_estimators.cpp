#include <gtest/gtest.h>

#include <cmath>

#include "riskol/catalog.hpp"
#include "riskol/estimators.hpp"
#include "riskol/oracle.hpp"

using namespace riskol;

TEST(FirstOrderGradient, Examples) {
  SampleBatch b{{1, 2, 3, 4}, std::vector<Vector>{{1}, {1}, {1}, {1}}};
  auto g = first_order_gradient(b, RiskLevel(0.5));
  ASSERT_EQ(g.g.size(), 1u);
  EXPECT_DOUBLE_EQ(g.g[0], 1.5);
  EXPECT_EQ(g.active_count, 3u);
  EXPECT_EQ(g.kind, EstimatorKind::first_order);

  SampleBatch single{{0.7}, std::vector<Vector>{{-2.5}}};
  EXPECT_DOUBLE_EQ(first_order_gradient(single, RiskLevel(1.0)).g[0], -2.5);

  SampleBatch zeros{{1, 2}, std::vector<Vector>{{0}, {0}}};
  for (double a : {0.1, 0.5, 1.0}) EXPECT_EQ(first_order_gradient(zeros, RiskLevel(a)).g[0], 0.0);
}

TEST(FirstOrderGradient, RequiresGradients) {
  SampleBatch b{{1, 2}, std::nullopt};
  try {
    first_order_gradient(b, RiskLevel(0.5));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "first-order estimator requires gradients");
  }
}

TEST(FirstOrderGradient, TiesCountEveryActiveSample) {
  SampleBatch b{{2, 2, 2, 1}, std::vector<Vector>{{1}, {1}, {1}, {1}}};
  const auto g = first_order_gradient(b, RiskLevel(0.5));
  EXPECT_EQ(g.active_count, 3u);
  EXPECT_DOUBLE_EQ(g.g[0], 3.0 / 2.0);
}

TEST(FirstOrderGradient, NormBoundedByGOverAlpha) {
  Rng rng(2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 37;
    SampleBatch b;
    b.grads.emplace();
    double g_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      b.costs.push_back(unit(rng));
      Vector g{3 * unit(rng), unit(rng)};
      g_max = std::max(g_max, norm(g));
      b.grads->push_back(g);
    }
    const RiskLevel a(0.05 + 0.95 * (trial % 20) / 19.0);
    const auto est = first_order_gradient(b, a);
    EXPECT_LE(norm(est.g), g_max / a.value() + 1e-12);
    EXPECT_GE(est.active_count, 1u);
  }
}

// With the true quantile, the batch mean of the estimate approaches the
// finite-difference gradient of the exact CVaR.
TEST(FirstOrderGradient, MatchesOracleGradientOnParking) {
  const auto sc = make_builtin_scenario("static");
  const Vector x{3.0};
  const double h = 1e-3;
  const double fd = (true_cvar(sc, 1, Vector{3.0 + h}) - true_cvar(sc, 1, Vector{3.0 - h})) / (2 * h);
  Rng rng(9);
  double sum = 0.0;
  const int batches = 40;
  for (int k = 0; k < batches; ++k) {
    SampleBatch b;
    b.grads.emplace();
    for (int i = 0; i < 5000; ++i) {
      const double xi = sc.noise.sample(rng);
      b.costs.push_back(sc.cost(1, x, xi));
      b.grads->push_back(sc.gradient(1, x, xi));
    }
    sum += first_order_gradient(b, sc.alpha(1)).g[0];
  }
  EXPECT_NEAR(sum / batches, fd, 0.05 * std::abs(fd));
}

TEST(SphereSampling, UnitNormAndSymmetry) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto u = sample_unit_sphere(1, rng);
    EXPECT_TRUE(u[0] == 1.0 || u[0] == -1.0);
  }
  for (std::size_t d : {2u, 3u, 10u}) EXPECT_NEAR(norm(sample_unit_sphere(d, rng)), 1.0, 1e-12);
  double m0 = 0.0;
  double m1 = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto u = sample_unit_sphere(2, rng);
    m0 += u[0];
    m1 += u[1];
  }
  EXPECT_LT(std::hypot(m0 / draws, m1 / draws), 0.02);
  EXPECT_THROW(sample_unit_sphere(0, rng), std::invalid_argument);
}

TEST(ZerothOrderGradient, Examples) {
  EXPECT_DOUBLE_EQ(zeroth_order_gradient(3.5, Vector{1.0}, SmoothingParams(0.1, 1)).g[0], 35.0);
  const auto zero = zeroth_order_gradient(0.0, Vector{0.6, 0.8}, SmoothingParams(0.3, 2));
  EXPECT_EQ(zero.g, (Vector{0.0, 0.0}));
  const auto g = zeroth_order_gradient(2.0, Vector{0.6, 0.8}, SmoothingParams(0.5, 2));
  EXPECT_NEAR(g.g[0], 4.8, 1e-12);
  EXPECT_NEAR(g.g[1], 6.4, 1e-12);
  EXPECT_EQ(g.kind, EstimatorKind::zeroth_order);
  EXPECT_THROW(SmoothingParams(0.0, 1), std::invalid_argument);
  EXPECT_THROW(SmoothingParams(-1.0, 1), std::invalid_argument);
}

TEST(ZerothOrderGradient, NormAndLinearity) {
  const SmoothingParams p(0.25, 2);
  const Vector u{0.6, -0.8};
  for (double c : {-3.0, 0.5, 7.0}) {
    const auto g = zeroth_order_gradient(c, u, p);
    EXPECT_NEAR(norm(g.g), 2.0 / 0.25 * std::abs(c), 1e-12);
    const auto g2 = zeroth_order_gradient(2 * c, u, p);
    EXPECT_NEAR(g2.g[0], 2 * g.g[0], 1e-12);
  }
}

TEST(SmoothedValue, ConstantAndQuadratic) {
  Rng rng(6);
  const auto constant = [](std::span<const double>) { return 4.2; };
  EXPECT_NEAR(smoothed_value(constant, Vector{1.0}, SmoothingParams(0.7, 1), 10, rng), 4.2, 1e-14);
  const auto square = [](std::span<const double> x) { return x[0] * x[0]; };
  EXPECT_NEAR(smoothed_value(square, Vector{0.0}, SmoothingParams(0.1, 1), 1000, rng), 0.01, 1e-15);
  EXPECT_THROW(smoothed_value(square, Vector{0.0}, SmoothingParams(0.1, 1), 0, rng), std::invalid_argument);
}

TEST(SmoothedCvarOracle, CloseToOracleForSmallRadius) {
  const auto sc = make_builtin_scenario("static");
  Rng rng(8);
  const double delta = 0.05;
  const Vector x{4.0};
  const double smooth = smoothed_cvar_oracle(sc, 1, x, SmoothingParams(delta, 1), 200, rng);
  // Lipschitz constant of C on [3.9, 4.1] from the oracle itself.
  const double slope = std::abs(true_cvar(sc, 1, Vector{4.1}) - true_cvar(sc, 1, Vector{3.9})) / 0.2;
  EXPECT_LE(std::abs(smooth - true_cvar(sc, 1, x)), delta * slope * 1.1);
}
