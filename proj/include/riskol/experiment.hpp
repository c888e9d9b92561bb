#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskol/catalog.hpp"
#include "riskol/learner.hpp"
#include "riskol/oracle.hpp"

namespace riskol {

/// How the parameter selection sees the variation budget.
enum class Variant { algorithm, ignore_vf, ignore_valpha };

std::string to_string(LearnerMode mode);
std::string to_string(Variant variant);

/// Per-step sample counts as given on the command line: an integer, "t" for
/// n_t = t, or "auto" for the smallest constant meeting the budget.
struct SampleSpec {
  enum class Kind { constant, growing, automatic };
  Kind kind = Kind::constant;
  std::size_t n = 8;

  static SampleSpec parse(const std::string& text);
  std::string to_string() const;
};

struct ExperimentConfig {
  std::string scenario = "step";
  CaseStudy study;
  std::vector<LearnerMode> modes{LearnerMode::first_order, LearnerMode::zeroth_order};
  /// Adds the ignore-V_f / ignore-V_alpha learners for each mode and the static price.
  bool baselines = false;
  std::size_t runs = 20;
  std::uint64_t seed_base = 1;
  SampleSpec samples;
  /// Budget exponent; defaults to the largest a the schedule satisfies.
  std::optional<double> a;
  double c = 1.0;
  /// Absolute overrides of the selected rates.
  std::optional<double> eta;
  std::optional<double> delta;
  /// Multipliers on the selected step sizes.
  double eta_scale_first = 40.0;
  double eta_scale_zeroth = 8.0;
  /// If non-empty, eta is picked per learner from this grid by mean final regret.
  std::vector<double> eta_grid;
  double x1 = 0.0;
  unsigned threads = 0;
  OracleResolution resolution;
  /// No files are written when empty.
  std::filesystem::path out;
};

/// One learner line-up entry with its resolved parameters.
struct LearnerSpec {
  std::string label;
  LearnerMode mode = LearnerMode::first_order;
  Variant variant = Variant::algorithm;
  double eta = 0.0;
  std::optional<double> delta;
  /// Mean final regret per grid value when eta was tuned.
  std::vector<std::pair<double, double>> tuning;
};

struct StepLog {
  int t = 0;
  Vector x;
  std::optional<Vector> x_hat;
  /// Realized mean occupancy over the step's samples at the played action.
  double occupancy_mean = 0.0;
  double xi_mean = 0.0;
  double cvar_action = 0.0;
  double cvar_opt = 0.0;
  Vector x_opt;
  double regret_cum = 0.0;
  double alpha = 1.0;
  std::size_t n = 0;
  double eta = 0.0;
  std::optional<double> delta;
};

struct RunTrace {
  std::string learner;
  std::uint64_t seed = 0;
  std::vector<StepLog> steps;

  double final_regret() const { return steps.empty() ? 0.0 : steps.back().regret_cum; }
};

/// Per-step mean and population standard deviation of tracked metrics.
struct Summary {
  std::vector<std::string> metrics;
  std::vector<int> t;
  /// mean[k][i], stddev[k][i] for metric k at step t[i].
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> stddev;

  const std::vector<double>& mean_of(const std::string& metric) const;
};

/// Metrics of a set of equally long traces: price, occupancy, cvar, regret.
Summary summarize(const std::vector<RunTrace>& runs);

struct StaticPrice {
  double price = 0.0;
  RegretTrace regret;
};

/// Single price minimizing sum_t C_t(x), by the oracle's two-stage grid.
StaticPrice optimal_static_price(RegretOracle& oracle);

struct ExperimentResult {
  std::string scenario;
  double v_alpha = 0.0;
  double v_f = 0.0;
  double a = 0.0;
  BudgetReport budget;
  std::vector<LearnerSpec> learners;
  std::map<std::string, std::vector<RunTrace>> runs;
  std::map<std::string, Summary> summaries;
  std::optional<StaticPrice> static_price;
  std::vector<Optimum> optima;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> files;

  double mean_final_regret(const std::string& label) const;
};

/// Runs every learner for every seed (runs in parallel, results ordered by
/// seed) and writes trace, summary and oracle CSVs when config.out is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Runs one learner for one seed against a prepared oracle.
RunTrace run_learner(const Scenario& scenario, RegretOracle& oracle, const LearnerSpec& learner,
                     const SamplingSchedule& schedule, double x1, std::uint64_t seed);

/// Largest a with sum_t 1/sqrt(n_t) <= c T^(1 - a/2).
double budget_exponent(const SamplingSchedule& schedule, int horizon, double c);

SamplingSchedule make_schedule(const SampleSpec& spec, int horizon, double a, double c);

/// Shortest round-trip decimal form.
std::string format_number(double v);

void write_trace_csv(const std::filesystem::path& path, const RunTrace& run);
void write_summary_csv(const std::filesystem::path& path, const std::map<std::string, Summary>& summaries);
void write_oracle_csv(const std::filesystem::path& path, const Scenario& scenario,
                      const std::vector<Optimum>& optima);

inline constexpr const char* kTraceHeader =
    "t,x,x_hat,occupancy_mean,cvar_action,cvar_opt,x_opt,regret_cum,alpha,n_t,eta,delta";

}  // namespace riskol
