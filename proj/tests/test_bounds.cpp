#include <gtest/gtest.h>

#include "riskol/bounds.hpp"
#include "riskol/distributions.hpp"

using namespace riskol;

namespace {

SuiteOptions quick() {
  SuiteOptions o;
  o.trials = 200;
  o.seed = 3;
  return o;
}

}  // namespace

TEST(BoundSuites, AllHoldAtRequiredCoverage) {
  for (const auto& suite : {dkw_suite(quick()), dkw_cdf_suite(quick()), lemma3_var_suite(quick()),
                            lemma3_grad_suite(quick()), lemma4_suite(quick()), lemma5_suite(quick()),
                            lemma7_suite(quick())}) {
    EXPECT_TRUE(suite.ok()) << suite.name << " coverage " << suite.coverage();
    EXPECT_EQ(suite.reports.size(), 200u) << suite.name;
  }
}

TEST(BoundSuites, DeterministicSuitesRequireEveryTrial) {
  EXPECT_EQ(lemma4_suite(quick()).required, 1.0);
  EXPECT_EQ(lemma5_suite(quick()).required, 1.0);
  EXPECT_EQ(lemma7_suite(quick()).required, 1.0);
  EXPECT_NEAR(dkw_suite(quick()).required, 0.94, 1e-12);
}

TEST(BoundSuites, SelectionByName) {
  EXPECT_EQ(run_bound_suites("3", quick()).size(), 2u);
  EXPECT_EQ(run_bound_suites("dkw", quick()).size(), 2u);
  EXPECT_EQ(run_bound_suites("4", quick()).size(), 1u);
  EXPECT_THROW(run_bound_suites("6", quick()), std::invalid_argument);
}

TEST(BoundSuites, TightestReportHasSmallestSlack) {
  const auto s = lemma4_suite(quick());
  const auto& t = s.tightest();
  for (const auto& r : s.reports) EXPECT_LE(t.bound - t.measured, r.bound - r.measured);
}

// The level-shift bound relies on nonnegative costs: a batch with a negative
// sample can move further than |1/a1 - 1/a2| U.
TEST(LevelShiftBound, SignedBatchCanExceedIt) {
  const double u = 1.0;
  const auto d = build_empirical(std::vector<double>{-u, u, u, u});
  const double gap = cvar(d, RiskLevel(0.75)) - cvar(d, RiskLevel(1.0));
  EXPECT_NEAR(gap, 0.5 * u, 1e-12);
  EXPECT_GT(gap, lemma4_bound(u, RiskLevel(0.75), RiskLevel(1.0)));
}
