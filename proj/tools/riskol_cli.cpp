// Command-line front end: experiments, scenario listing, budget checks and
// bound-coverage suites.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "riskol/bounds.hpp"
#include "riskol/catalog.hpp"
#include "riskol/config.hpp"
#include "riskol/experiment.hpp"
#include "riskol/learner.hpp"

namespace {

using namespace riskol;

struct RunFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  bool baselines = false;
};

void add_flag(CLI::App* cmd, RunFlags& flags, const std::string& key, const std::string& help) {
  cmd->add_option("--" + key, flags.values[key], help);
}

int run_command(CLI::App* cmd, RunFlags& flags) {
  Settings settings;
  if (!flags.config_file.empty()) settings = load_settings(flags.config_file);
  for (const auto& [key, value] : flags.values) {
    if (cmd->count("--" + key) > 0) settings[key] = value;
  }
  if (cmd->count("--baselines") > 0) settings["baselines"] = flags.baselines ? "true" : "false";

  ExperimentConfig config;
  config.out = default_output_dir();
  apply_settings(settings, config);

  const ExperimentResult result = run_experiment(config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::printf("scenario %s  V_alpha %.6g  V_f %.6g  a %.6g  budget %.6g <= %.6g (%s)\n", result.scenario.c_str(),
              result.v_alpha, result.v_f, result.a, result.budget.lhs, result.budget.rhs,
              result.budget.ok ? "ok" : "violated");
  std::printf("%-22s %12s %12s %14s %12s\n", "learner", "eta", "delta", "final regret", "std");
  for (const auto& l : result.learners) {
    const auto& runs = result.runs.at(l.label);
    const double mean = result.mean_final_regret(l.label);
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.final_regret() - mean) * (r.final_regret() - mean);
    char delta[32] = "-";
    if (l.delta) std::snprintf(delta, sizeof delta, "%.6g", *l.delta);
    std::printf("%-22s %12.6g %12s %14.6g %12.6g\n", l.label.c_str(), l.eta, delta, mean,
                std::sqrt(ss / static_cast<double>(runs.size())));
    for (const auto& [eta, regret] : l.tuning) std::printf("    tuning eta %-10.6g mean final regret %.6g\n", eta, regret);
  }
  if (result.static_price) {
    std::printf("%-22s %12s %12s %14.6g   price %.6g\n", "static_price", "-", "-",
                result.static_price->regret.total(), result.static_price->price);
  }
  if (!result.files.empty()) {
    std::printf("wrote %zu files to %s\n", result.files.size(), config.out.string().c_str());
  }
  return 0;
}

int validate_budget_command(const std::string& nt, double a, double c, int horizon) {
  const SamplingSchedule schedule = make_schedule(SampleSpec::parse(nt), horizon, a, c);
  const BudgetReport report = validate_budget(schedule, horizon);
  std::printf("n_1 %zu  n_T %zu  sum 1/sqrt(n_t) %.12g  c T^(1-a/2) %.12g  %s\n", schedule.at(1),
              schedule.at(horizon), report.lhs, report.rhs, report.ok ? "satisfied" : "violated");
  return report.ok ? 0 : 1;
}

int bounds_command(const std::string& lemma, const SuiteOptions& options) {
  bool all_ok = true;
  for (const auto& suite : run_bound_suites(lemma, options)) {
    const BoundReport& tight = suite.tightest();
    std::printf("%-22s coverage %.4f (required %.4f) %s  tightest: %s measured %.6g bound %.6g\n",
                suite.name.c_str(), suite.coverage(), suite.required, suite.ok() ? "PASS" : "FAIL",
                to_string(tight.name).c_str(), tight.measured, tight.bound);
    all_ok = all_ok && suite.ok();
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-averse online learning experiments"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run = app.add_subcommand("run", "run a scenario with one or both learners");
  run->add_option("--config", flags.config_file, "key = value settings file; flags override it")->check(CLI::ExistingFile);
  add_flag(run, flags, "scenario", "scenario id (see list-scenarios)");
  add_flag(run, flags, "mode", "first, zeroth or both");
  add_flag(run, flags, "runs", "number of seeds");
  add_flag(run, flags, "seed-base", "first seed");
  add_flag(run, flags, "nt", "samples per step: integer, t or auto");
  add_flag(run, flags, "a", "budget exponent");
  add_flag(run, flags, "c", "budget constant");
  add_flag(run, flags, "out", "output directory (default $RISKOL_OUT_DIR or ./results)");
  add_flag(run, flags, "eta", "fixed learning rate");
  add_flag(run, flags, "delta", "fixed smoothing radius");
  add_flag(run, flags, "eta-scale-first", "multiplier on the selected first-order rate");
  add_flag(run, flags, "eta-scale-zeroth", "multiplier on the selected zeroth-order rate");
  add_flag(run, flags, "eta-grid", "comma-separated learning rates to tune over");
  add_flag(run, flags, "x1", "initial price");
  add_flag(run, flags, "threads", "worker threads (0 = all cores)");
  add_flag(run, flags, "horizon", "horizon T");
  run->add_flag("--baselines", flags.baselines, "add ignore-V_f, ignore-V_alpha and static-price baselines");

  app.add_subcommand("list-scenarios", "list built-in scenarios");

  std::string nt = "8";
  double a = 0.5;
  double c = 1.0;
  int horizon = 500;
  auto* budget = app.add_subcommand("validate-budget", "check sum_t 1/sqrt(n_t) <= c T^(1 - a/2)");
  budget->add_option("--nt", nt, "samples per step: integer, t or auto")->capture_default_str();
  budget->add_option("--a", a, "budget exponent")->capture_default_str();
  budget->add_option("--c", c, "budget constant")->capture_default_str();
  budget->add_option("--horizon", horizon, "horizon T")->capture_default_str();

  std::string lemma;
  SuiteOptions suite;
  auto* bounds = app.add_subcommand("bounds", "run a bound-coverage suite");
  bounds->add_option("--lemma", lemma, "3, 4, 5, 7 or dkw")->required()->check(CLI::IsMember({"3", "4", "5", "7", "dkw"}));
  bounds->add_option("--trials", suite.trials, "trials per suite")->capture_default_str();
  bounds->add_option("--seed", suite.seed, "seed")->capture_default_str();
  bounds->add_option("--n", suite.samples, "samples per batch")->capture_default_str();
  bounds->add_option("--gamma", suite.gamma_bar, "failure probability")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run, flags);
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& e : builtin_scenarios()) std::printf("%-16s %s\n", e.id.c_str(), e.description.c_str());
      return 0;
    }
    if (budget->parsed()) return validate_budget_command(nt, a, c, horizon);
    if (bounds->parsed()) return bounds_command(lemma, suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
