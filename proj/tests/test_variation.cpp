#include <gtest/gtest.h>

#include <cmath>

#include "riskol/catalog.hpp"
#include "riskol/variation.hpp"

using namespace riskol;

namespace {

Schedule constant(double v) {
  return [v](int) { return v; };
}

// sup over an x-grid of a fine midpoint-rule E|J_b - J_a| for the parking cost.
double brute_jump(double ra, double rb, double price_hi, int grid, int nodes) {
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = price_hi * i / (grid - 1);
    double e = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double xi = 0.9 + 0.2 * (k + 0.5) / nodes;
      const double m = xi - 0.15 * x;
      e += std::abs((m - rb) * (m - rb) - (m - ra) * (m - ra));
    }
    best = std::max(best, e / nodes);
  }
  return best;
}

}  // namespace

TEST(RiskVariation, Examples) {
  EXPECT_NEAR(risk_variation(std::vector<double>{0.5, 0.5, 0.8, 0.8}), 0.3, 1e-15);
  EXPECT_EQ(risk_variation(std::vector<double>(10, 0.4)), 0.0);
  EXPECT_NEAR(risk_variation(std::vector<double>{0.5, 0.6, 0.7, 0.8}), 0.3, 1e-15);
  EXPECT_NEAR(risk_variation(std::vector<double>{0.5, 0.8}), 0.3, 1e-15);
  EXPECT_EQ(risk_variation(std::vector<double>{0.5}), 0.0);
  // Prepending duplicates of the first entry changes nothing.
  EXPECT_NEAR(risk_variation(std::vector<double>{0.5, 0.5, 0.5, 0.9, 0.2}), 1.1, 1e-15);
}

TEST(RiskVariation, CatalogScenarios) {
  EXPECT_NEAR(risk_variation(make_builtin_scenario("step")), 0.3, 1e-12);
  EXPECT_EQ(risk_variation(make_builtin_scenario("static")), 0.0);
  double prev = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const double v = risk_variation(make_builtin_scenario("valpha_sweep_m" + std::to_string(m)));
    EXPECT_NEAR(v, 0.7 * (1 << m), 1e-9);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(FunctionVariation, StaticIsZero) {
  const auto sc = make_builtin_scenario("static");
  EXPECT_EQ(function_variation(sc, sc.set).value, 0.0);
}

TEST(FunctionVariation, SingleJumpMatchesClosedForm) {
  // On X = [0, 10] the difference 0.05 (4.35 - 2 xi - 0.3 x) ... keeps one sign
  // at x = 10, where E|.| = 0.05 (4.35 - 2) = 0.1175.
  const auto sc = make_builtin_scenario("step");
  const auto v = function_variation(sc, sc.set);
  EXPECT_NEAR(v.value, 0.1175, 1e-12);
  EXPECT_EQ(v.quad_points, 129u);
  EXPECT_EQ(v.grid_points, 1001u);
  EXPECT_NEAR(v.grid_spacing, 0.01, 1e-15);
}

TEST(FunctionVariation, SignChangingJumpMatchesBruteForce) {
  ParkingOptions opts;
  opts.price_hi = 2.0;
  opts.regularization = 0.0;
  const auto sc = make_parking_scenario("jump", 4, [](int t) { return t <= 2 ? 0.65 : 0.7; }, constant(0.5), opts);
  const double ref = brute_jump(0.65, 0.7, 2.0, 201, 20000);
  EXPECT_NEAR(function_variation(sc, sc.set, 129, 201).value, ref, 1e-6);
}

TEST(FunctionVariation, AdditiveAndOrderedAcrossSweeps) {
  double prev = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const auto sc = make_builtin_scenario("vf_sweep_m" + std::to_string(m));
    const double v = function_variation(sc, sc.set).value;
    EXPECT_NEAR(v, 0.1175 * (1 << m), 1e-9) << m;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(FunctionVariation, FinerGridDoesNotDecrease) {
  ParkingOptions opts;
  opts.price_hi = 2.0;
  const auto sc = make_parking_scenario("jump", 3, [](int t) { return t == 1 ? 0.6 : 0.72; }, constant(0.5), opts);
  const double coarse = function_variation(sc, sc.set, 129, 11).value;
  const double fine = function_variation(sc, sc.set, 129, 21).value;
  EXPECT_GE(fine, coarse - 1e-9);
  EXPECT_THROW(function_variation(sc, sc.set, 1, 11), std::invalid_argument);
}
