#include "riskol/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "riskol/variation.hpp"

namespace riskol {

std::string to_string(LearnerMode mode) {
  return mode == LearnerMode::first_order ? "first" : "zeroth";
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::algorithm:
      return "algorithm";
    case Variant::ignore_vf:
      return "ignore_vf";
    case Variant::ignore_valpha:
      return "ignore_valpha";
  }
  return "unknown";
}

SampleSpec SampleSpec::parse(const std::string& text) {
  if (text == "t") return {Kind::growing, 0};
  if (text == "auto") return {Kind::automatic, 0};
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || n == 0) {
    throw std::invalid_argument("sample count must be a positive integer, \"t\" or \"auto\": " + text);
  }
  return {Kind::constant, n};
}

std::string SampleSpec::to_string() const {
  switch (kind) {
    case Kind::growing:
      return "t";
    case Kind::automatic:
      return "auto";
    case Kind::constant:
      break;
  }
  return std::to_string(n);
}

const std::vector<double>& Summary::mean_of(const std::string& metric) const {
  const auto it = std::find(metrics.begin(), metrics.end(), metric);
  if (it == metrics.end()) throw std::out_of_range("no such metric: " + metric);
  return mean[static_cast<std::size_t>(it - metrics.begin())];
}

Summary summarize(const std::vector<RunTrace>& runs) {
  if (runs.empty()) throw std::invalid_argument("nothing to summarize");
  const std::size_t steps = runs.front().steps.size();
  for (const auto& r : runs) {
    if (r.steps.size() != steps) throw std::invalid_argument("runs have different lengths");
  }
  Summary s;
  s.metrics = {"price", "occupancy", "cvar", "regret"};
  const std::vector<std::function<double(const StepLog&)>> pick = {
      [](const StepLog& l) { return l.x.front(); },
      [](const StepLog& l) { return l.occupancy_mean; },
      [](const StepLog& l) { return l.cvar_action; },
      [](const StepLog& l) { return l.regret_cum; },
  };
  s.mean.assign(pick.size(), std::vector<double>(steps));
  s.stddev.assign(pick.size(), std::vector<double>(steps));
  const double k = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < steps; ++i) {
    s.t.push_back(runs.front().steps[i].t);
    for (std::size_t m = 0; m < pick.size(); ++m) {
      double sum = 0.0;
      for (const auto& r : runs) sum += pick[m](r.steps[i]);
      const double mu = sum / k;
      double ss = 0.0;
      for (const auto& r : runs) ss += (pick[m](r.steps[i]) - mu) * (pick[m](r.steps[i]) - mu);
      s.mean[m][i] = mu;
      s.stddev[m][i] = std::sqrt(ss / k);
    }
  }
  return s;
}

StaticPrice optimal_static_price(RegretOracle& oracle) {
  const Scenario& sc = oracle.scenario();
  // Steps sharing a regime share C_t, so weight one representative by its count.
  std::vector<std::pair<int, double>> reps;
  if (sc.regime) {
    std::map<Vector, std::size_t> index;
    for (int t = 1; t <= sc.horizon; ++t) {
      const auto [it, fresh] = index.emplace(sc.regime(t), reps.size());
      if (fresh) reps.emplace_back(t, 0.0);
      reps[it->second].second += 1.0;
    }
  } else {
    for (int t = 1; t <= sc.horizon; ++t) reps.emplace_back(t, 1.0);
  }
  const Objective total = [&](std::span<const double> x) {
    double s = 0.0;
    for (const auto& [t, w] : reps) s += w * oracle.cvar(t, x);
    return s;
  };
  const Optimum best = grid_minimize(total, oracle.set(), oracle.resolution());
  StaticPrice out;
  out.price = best.x.front();
  const std::vector<Vector> actions(static_cast<std::size_t>(sc.horizon), best.x);
  out.regret = dynamic_regret(actions, oracle);
  return out;
}

double ExperimentResult::mean_final_regret(const std::string& label) const {
  if (label == "static_price" && static_price) return static_price->regret.total();
  const auto it = runs.find(label);
  if (it == runs.end() || it->second.empty()) throw std::out_of_range("no runs for learner " + label);
  double s = 0.0;
  for (const auto& r : it->second) s += r.final_regret();
  return s / static_cast<double>(it->second.size());
}

double budget_exponent(const SamplingSchedule& schedule, int horizon, double c) {
  double lhs = 0.0;
  for (int t = 1; t <= horizon; ++t) lhs += 1.0 / std::sqrt(static_cast<double>(schedule.at(t)));
  return 2.0 * (1.0 - std::log(lhs / c) / std::log(static_cast<double>(horizon)));
}

SamplingSchedule make_schedule(const SampleSpec& spec, int horizon, double a, double c) {
  switch (spec.kind) {
    case SampleSpec::Kind::growing:
      return SamplingSchedule::growing(a, c);
    case SampleSpec::Kind::automatic:
      return SamplingSchedule::constant(constant_schedule_for_budget(horizon, a, c), a, c);
    case SampleSpec::Kind::constant:
      break;
  }
  return SamplingSchedule::constant(spec.n, a, c);
}

RunTrace run_learner(const Scenario& scenario, RegretOracle& oracle, const LearnerSpec& learner,
                     const SamplingSchedule& schedule, double x1, std::uint64_t seed) {
  LearnerConfig cfg;
  cfg.mode = learner.mode;
  cfg.eta = learner.eta;
  cfg.delta = learner.delta.value_or(0.0);
  cfg.schedule = schedule;
  cfg.risk = scenario.risk;
  const FeasibleSet& set = scenario.set;
  const double elasticity = scenario.parking ? scenario.parking->elasticity : 0.0;

  Rng rng(seed);
  LearnerState state = initial_state(cfg, set, Vector(set.dimension(), x1));
  RunTrace trace;
  trace.learner = learner.label;
  trace.seed = seed;
  trace.steps.reserve(static_cast<std::size_t>(scenario.horizon));
  double regret = 0.0;

  for (int t = 1; t <= scenario.horizon; ++t) {
    const std::size_t n = schedule.at(t);
    double xi_sum = 0.0;
    StepOutcome out;
    if (learner.mode == LearnerMode::first_order) {
      SampleBatch batch;
      batch.costs.reserve(n);
      batch.grads.emplace();
      batch.grads->reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double xi = scenario.noise.sample(rng);
        xi_sum += xi;
        batch.costs.push_back(scenario.cost(t, state.x, xi));
        batch.grads->push_back(scenario.gradient(t, state.x, xi));
      }
      out = step_first_order(state, cfg, set, batch);
    } else {
      const CostQuery query = [&](std::span<const double> x_hat, std::size_t k) {
        std::vector<double> costs;
        costs.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
          const double xi = scenario.noise.sample(rng);
          xi_sum += xi;
          costs.push_back(scenario.cost(t, x_hat, xi));
        }
        return costs;
      };
      out = step_zeroth_order(state, cfg, set, query, rng);
    }
    const StepRecord& rec = out.record;
    const Optimum opt = oracle.optimum(t);

    StepLog log;
    log.t = t;
    log.x = rec.x;
    if (learner.mode == LearnerMode::zeroth_order) log.x_hat = rec.x_hat;
    log.xi_mean = xi_sum / static_cast<double>(n);
    log.occupancy_mean = log.xi_mean + elasticity * rec.x_hat.front();
    log.cvar_action = oracle.cvar(t, rec.x_hat);
    log.cvar_opt = opt.value;
    log.x_opt = opt.x;
    regret += log.cvar_action - opt.value;
    log.regret_cum = regret;
    log.alpha = rec.alpha;
    log.n = rec.n;
    log.eta = learner.eta;
    log.delta = learner.delta;
    trace.steps.push_back(std::move(log));
    state = out.next;
  }
  return trace;
}

namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

/// Runs job(i) for i in [0, count) on a pool; results land in index order.
template <class Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < worker_count(threads, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<RunTrace> run_seeds(const Scenario& scenario, RegretOracle& oracle, const LearnerSpec& learner,
                                const SamplingSchedule& schedule, const ExperimentConfig& config) {
  std::vector<RunTrace> runs(config.runs);
  parallel_for(config.runs, config.threads, [&](std::size_t i) {
    runs[i] = run_learner(scenario, oracle, learner, schedule, config.x1, config.seed_base + i);
  });
  return runs;
}

double mean_final(const std::vector<RunTrace>& runs) {
  double s = 0.0;
  for (const auto& r : runs) s += r.final_regret();
  return s / static_cast<double>(runs.size());
}

std::string learner_label(LearnerMode mode, Variant variant) {
  std::string label = to_string(mode);
  if (variant != Variant::algorithm) label += "_" + to_string(variant);
  return label;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string join_vector(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_number(v[i]);
  }
  return s;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& run) {
  auto out = open_for_write(path);
  out << kTraceHeader << '\n';
  for (const auto& s : run.steps) {
    out << s.t << ',' << join_vector(s.x) << ',' << (s.x_hat ? join_vector(*s.x_hat) : "") << ','
        << format_number(s.occupancy_mean) << ',' << format_number(s.cvar_action) << ','
        << format_number(s.cvar_opt) << ',' << join_vector(s.x_opt) << ',' << format_number(s.regret_cum) << ','
        << format_number(s.alpha) << ',' << s.n << ',' << format_number(s.eta) << ','
        << (s.delta ? format_number(*s.delta) : "") << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::map<std::string, Summary>& summaries) {
  if (summaries.empty()) throw std::invalid_argument("no summaries to write");
  auto out = open_for_write(path);
  const std::vector<int>& t = summaries.begin()->second.t;
  out << 't';
  for (const auto& [label, s] : summaries) {
    if (s.t != t) throw std::invalid_argument("summaries cover different steps");
    for (const auto& m : s.metrics) out << ',' << label << '_' << m << "_mean," << label << '_' << m << "_std";
  }
  out << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << t[i];
    for (const auto& [label, s] : summaries) {
      for (std::size_t m = 0; m < s.metrics.size(); ++m) {
        out << ',' << format_number(s.mean[m][i]) << ',' << format_number(s.stddev[m][i]);
      }
    }
    out << '\n';
  }
}

void write_oracle_csv(const std::filesystem::path& path, const Scenario& scenario,
                      const std::vector<Optimum>& optima) {
  auto out = open_for_write(path);
  out << "t,alpha,x_opt,cvar_opt\n";
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    out << t << ',' << format_number(scenario.risk(t)) << ',' << join_vector(optima[i].x) << ','
        << format_number(optima[i].value) << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.runs == 0) throw std::invalid_argument("runs must be >= 1");
  if (config.modes.empty()) throw std::invalid_argument("no learner mode selected");
  const Scenario scenario = make_builtin_scenario(config.scenario, config.study);
  const int T = scenario.horizon;

  ExperimentResult result;
  result.scenario = config.scenario;
  result.v_alpha = risk_variation(scenario);
  result.v_f = function_variation(scenario, scenario.set, config.resolution.quad_points,
                                  config.resolution.grid_points)
                   .value;

  // Budget exponent: given, or the largest one the requested counts satisfy.
  if (config.a) {
    result.a = *config.a;
  } else if (config.samples.kind == SampleSpec::Kind::automatic) {
    throw std::invalid_argument("--nt auto needs the budget exponent a");
  } else {
    result.a = budget_exponent(make_schedule(config.samples, T, 1.0, config.c), T, config.c);
    if (!(result.a > 0.0)) {
      result.warnings.push_back("the sample schedule meets the budget for no positive a; using a = 1e-6");
      result.a = 1e-6;
    }
  }
  const SamplingSchedule schedule = make_schedule(config.samples, T, result.a, config.c);
  result.budget = validate_budget(schedule, T);
  if (!result.budget.ok) {
    result.warnings.push_back("sampling budget violated: lhs " + format_number(result.budget.lhs) + " > rhs " +
                              format_number(result.budget.rhs));
  }

  RegretOracle oracle(scenario, scenario.set, config.resolution);
  oracle.precompute(config.threads);
  for (int t = 1; t <= T; ++t) result.optima.push_back(oracle.optimum(t));

  std::vector<Variant> variants{Variant::algorithm};
  if (config.baselines) {
    variants.push_back(Variant::ignore_vf);
    variants.push_back(Variant::ignore_valpha);
  }
  for (const LearnerMode mode : config.modes) {
    for (const Variant variant : variants) {
      const double va = variant == Variant::ignore_valpha ? 0.0 : result.v_alpha;
      const double vf = variant == Variant::ignore_vf ? 0.0 : result.v_f;
      LearnerSpec spec;
      spec.label = learner_label(mode, variant);
      spec.mode = mode;
      spec.variant = variant;
      if (mode == LearnerMode::first_order) {
        spec.eta = config.eta.value_or(config.eta_scale_first * select_params_first_order(T, va, vf).eta);
      } else {
        const ZerothOrderParams p = select_params_zeroth_order(T, va, vf, result.a, scenario.set.inscribed_radius());
        spec.delta = config.delta.value_or(p.delta);
        spec.eta = config.eta.value_or(config.eta_scale_zeroth * p.eta);
      }

      std::vector<RunTrace> runs;
      if (!config.eta_grid.empty() && !config.eta) {
        double best = std::numeric_limits<double>::infinity();
        for (const double eta : config.eta_grid) {
          LearnerSpec trial = spec;
          trial.eta = eta;
          auto trial_runs = run_seeds(scenario, oracle, trial, schedule, config);
          const double m = mean_final(trial_runs);
          spec.tuning.emplace_back(eta, m);
          if (m < best) {
            best = m;
            runs = std::move(trial_runs);
            spec.eta = eta;
          }
        }
      } else {
        runs = run_seeds(scenario, oracle, spec, schedule, config);
      }
      result.summaries.emplace(spec.label, summarize(runs));
      result.runs.emplace(spec.label, std::move(runs));
      result.learners.push_back(std::move(spec));
    }
  }
  if (config.baselines) result.static_price = optimal_static_price(oracle);

  if (!config.out.empty()) {
    std::filesystem::create_directories(config.out);
    for (const auto& [label, runs] : result.runs) {
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto path = config.out / ("trace_" + label + "_run" + std::to_string(i) + ".csv");
        write_trace_csv(path, runs[i]);
        result.files.push_back(path);
      }
    }
    if (result.static_price) {
      RunTrace run;
      run.learner = "static_price";
      for (const auto& step : result.static_price->regret.steps) {
        StepLog log;
        log.t = step.t;
        log.x = step.action;
        log.occupancy_mean = scenario.noise.mean() + scenario.parking->elasticity * step.action.front();
        log.cvar_action = step.cvar_action;
        log.cvar_opt = step.cvar_opt;
        log.x_opt = step.x_opt;
        log.regret_cum = step.cumulative;
        log.alpha = scenario.risk(step.t);
        run.steps.push_back(std::move(log));
      }
      const auto path = config.out / "trace_static_price.csv";
      write_trace_csv(path, run);
      result.files.push_back(path);
    }
    const auto summary = config.out / "summary.csv";
    write_summary_csv(summary, result.summaries);
    result.files.push_back(summary);
    const auto oracle_path = config.out / "oracle.csv";
    write_oracle_csv(oracle_path, scenario, result.optima);
    result.files.push_back(oracle_path);
  }
  return result;
}

}  // namespace riskol
