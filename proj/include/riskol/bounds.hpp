#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskol/oracle.hpp"

namespace riskol {

/// Outcome of a randomized bound-coverage suite.
struct SuiteResult {
  std::string name;
  std::vector<BoundReport> reports;
  std::size_t held = 0;
  /// Fraction of trials required to hold.
  double required = 1.0;

  double coverage() const;
  bool ok() const { return coverage() >= required; }
  /// Report with the smallest slack bound - measured.
  const BoundReport& tightest() const;
};

struct SuiteOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
  std::size_t samples = 8;
  double gamma_bar = 0.05;
};

/// |CVaR(F_hat) - C(x)| <= (U / alpha) eps_DKW on the static parking scenario at x = 2.
SuiteResult dkw_suite(const SuiteOptions& options = {});
/// sup |F_hat - F| <= eps_DKW at the same point.
SuiteResult dkw_cdf_suite(const SuiteOptions& options = {});
/// VaR and gradient estimation errors at price 0, where the cost density is bounded.
SuiteResult lemma3_var_suite(const SuiteOptions& options = {});
SuiteResult lemma3_grad_suite(const SuiteOptions& options = {});
/// Random nonnegative batches, random level pairs.
SuiteResult lemma4_suite(const SuiteOptions& options = {});
/// Random paired cost batches on shared samples, plus parking target pairs.
SuiteResult lemma5_suite(const SuiteOptions& options = {});
/// Random pairs of equally sized nonnegative batches.
SuiteResult lemma7_suite(const SuiteOptions& options = {});

/// Suites selected by a CLI lemma name: 3, 4, 5, 7 or dkw.
std::vector<SuiteResult> run_bound_suites(const std::string& lemma, const SuiteOptions& options = {});

}  // namespace riskol
