#include "riskol/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riskol/catalog.hpp"
#include "riskol/distributions.hpp"

namespace riskol {

double SuiteResult::coverage() const {
  return reports.empty() ? 0.0 : static_cast<double>(held) / static_cast<double>(reports.size());
}

const BoundReport& SuiteResult::tightest() const {
  if (reports.empty()) throw std::logic_error("suite has no reports");
  return *std::min_element(reports.begin(), reports.end(), [](const BoundReport& a, const BoundReport& b) {
    return a.bound - a.measured < b.bound - b.measured;
  });
}

namespace {

void add(SuiteResult& suite, BoundReport report) {
  if (report.ok) ++suite.held;
  suite.reports.push_back(report);
}

std::vector<double> sample_costs(const Scenario& sc, int t, std::span<const double> x, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (auto& c : out) c = sc.cost(t, x, sc.noise.sample(rng));
  return out;
}

/// (1/alpha) E[1{J >= nu} dJ/dx] by a fine midpoint rule over the uniform noise.
double tail_gradient(const Scenario& sc, int t, std::span<const double> x, double nu, RiskLevel alpha) {
  constexpr int kNodes = 20000;
  const double lo = sc.noise.lo();
  const double w = sc.noise.hi() - lo;
  double sum = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double xi = lo + w * (i + 0.5) / kNodes;
    if (sc.cost(t, x, xi) >= nu) sum += sc.gradient(t, x, xi).front();
  }
  return sum / kNodes / alpha.value();
}

RiskLevel random_level(Rng& rng) {
  return RiskLevel(std::uniform_real_distribution<double>(0.01, 1.0)(rng));
}

std::vector<double> random_batch(std::size_t n, double u, Rng& rng) {
  std::uniform_real_distribution<double> val(0.0, u);
  std::vector<double> out(n);
  for (auto& v : out) v = val(rng);
  return out;
}

}  // namespace

SuiteResult dkw_suite(const SuiteOptions& o) {
  const Scenario sc = make_builtin_scenario("static");
  const Vector x{2.0};
  const RiskLevel alpha = sc.alpha(1);
  const double u = cost_bound(sc, sc.set);
  const double truth = true_cvar(sc, 1, x);
  const double bound = lemma7_bound(u, alpha, dkw_epsilon(o.samples, o.gamma_bar));
  SuiteResult suite{"dkw+lemma7 composed", {}, 0, 1.0 - o.gamma_bar - 0.01};
  Rng rng(o.seed);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const auto batch = build_empirical(sample_costs(sc, 1, x, o.samples, rng));
    add(suite, make_report(BoundKind::cvar_distance_bound, std::abs(cvar(batch, alpha) - truth), bound, o.gamma_bar));
  }
  return suite;
}

SuiteResult dkw_cdf_suite(const SuiteOptions& o) {
  const Scenario sc = make_builtin_scenario("static");
  const Vector x{2.0};
  const PiecewiseUniformLaw law = cost_law(sc, 1, x);
  const double eps = dkw_epsilon(o.samples, o.gamma_bar);
  SuiteResult suite{"dkw cdf", {}, 0, 1.0 - o.gamma_bar - 0.01};
  Rng rng(o.seed);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const auto batch = build_empirical(sample_costs(sc, 1, x, o.samples, rng));
    add(suite, make_report(BoundKind::dkw, sup_cdf_distance(batch, law), eps, o.gamma_bar));
  }
  return suite;
}

SuiteResult lemma3_var_suite(const SuiteOptions& o) {
  const Scenario sc = make_builtin_scenario("static");
  const Vector x{0.0};
  const RiskLevel alpha = sc.alpha(1);
  const double nu_star = var_value(cost_law(sc, 1, x), alpha);
  const DensityBounds density = parking_density_bounds(sc, 1, x.front());
  const double eps = lemma3_var_epsilon(o.samples, o.gamma_bar, density.p_lower);
  SuiteResult suite{"lemma 3 var", {}, 0, 1.0 - o.gamma_bar - 0.01};
  Rng rng(o.seed);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const auto batch = build_empirical(sample_costs(sc, 1, x, o.samples, rng));
    add(suite, make_report(BoundKind::var_bound, std::abs(var_estimate(batch, alpha) - nu_star), eps, o.gamma_bar));
  }
  return suite;
}

SuiteResult lemma3_grad_suite(const SuiteOptions& o) {
  const Scenario sc = make_builtin_scenario("static");
  const Vector x{0.0};
  const RiskLevel alpha = sc.alpha(1);
  const double nu_star = var_value(cost_law(sc, 1, x), alpha);
  const double grad_true = tail_gradient(sc, 1, x, nu_star, alpha);
  const DensityBounds density = parking_density_bounds(sc, 1, x.front());
  double g_max = 0.0;
  for (double xi : {sc.noise.lo(), sc.noise.hi()}) g_max = std::max(g_max, std::abs(sc.gradient(1, x, xi).front()));
  const double bound = lemma3_grad_bound(g_max, density.lipschitz, 1, o.gamma_bar, alpha, density.p_lower, o.samples);
  SuiteResult suite{"lemma 3 gradient", {}, 0, 1.0 - o.gamma_bar - 0.01};
  Rng rng(o.seed);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const auto batch = build_empirical(sample_costs(sc, 1, x, o.samples, rng));
    const double err = std::abs(tail_gradient(sc, 1, x, var_estimate(batch, alpha), alpha) - grad_true);
    add(suite, make_report(BoundKind::grad_error_bound, err, bound, o.gamma_bar));
  }
  return suite;
}

SuiteResult lemma4_suite(const SuiteOptions& o) {
  SuiteResult suite{"lemma 4", {}, 0, 1.0};
  Rng rng(o.seed);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const double u = scale(rng);
    const auto batch = build_empirical(random_batch(size(rng), u, rng));
    const RiskLevel a1 = random_level(rng);
    const RiskLevel a2 = random_level(rng);
    add(suite, make_report(BoundKind::risk_variation_bound, std::abs(cvar(batch, a1) - cvar(batch, a2)),
                           lemma4_bound(u, a1, a2)));
  }
  return suite;
}

SuiteResult lemma5_suite(const SuiteOptions& o) {
  SuiteResult suite{"lemma 5", {}, 0, 1.0};
  Rng rng(o.seed);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t batch_trials = o.trials / 2;
  for (std::size_t i = 0; i < batch_trials; ++i) {
    const std::size_t n = size(rng);
    std::vector<double> a(n);
    std::vector<double> b(n);
    const double spread = std::abs(unit(rng));
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = 5.0 * unit(rng);
      b[k] = a[k] + spread * unit(rng);
    }
    const RiskLevel alpha = random_level(rng);
    const double gap = std::abs(cvar(build_empirical(a), alpha) - cvar(build_empirical(b), alpha));
    add(suite, make_report(BoundKind::function_variation_bound, gap, lemma5_bound(a, b, alpha)));
  }
  // Parking costs at two targets share the noise law.
  std::uniform_real_distribution<double> target(0.5, 0.9);
  std::uniform_real_distribution<double> price(0.0, 10.0);
  for (std::size_t i = batch_trials; i < o.trials; ++i) {
    const double ra = target(rng);
    const double rb = target(rng);
    const RiskLevel alpha = random_level(rng);
    const auto risk = [v = alpha.value()](int) { return v; };
    const Scenario sa = make_parking_scenario("a", 1, [ra](int) { return ra; }, risk);
    const Scenario sb = make_parking_scenario("b", 1, [rb](int) { return rb; }, risk);
    const Vector x{price(rng)};
    const double gap = std::abs(true_cvar(sa, 1, x) - true_cvar(sb, 1, x));
    add(suite, make_report(BoundKind::function_variation_bound, gap, lemma5_bound(sa, sb, 1, x, alpha)));
  }
  return suite;
}

SuiteResult lemma7_suite(const SuiteOptions& o) {
  SuiteResult suite{"lemma 7", {}, 0, 1.0};
  Rng rng(o.seed);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (std::size_t i = 0; i < o.trials; ++i) {
    const std::size_t n = size(rng);
    const double u = scale(rng);
    const auto f = build_empirical(random_batch(n, u, rng));
    const auto g = build_empirical(random_batch(n, u, rng));
    const RiskLevel alpha = random_level(rng);
    add(suite, make_report(BoundKind::cvar_distance_bound, std::abs(cvar(f, alpha) - cvar(g, alpha)),
                           lemma7_bound(u, alpha, sup_cdf_distance(f, g))));
  }
  return suite;
}

std::vector<SuiteResult> run_bound_suites(const std::string& lemma, const SuiteOptions& options) {
  if (lemma == "3") return {lemma3_var_suite(options), lemma3_grad_suite(options)};
  if (lemma == "4") return {lemma4_suite(options)};
  if (lemma == "5") return {lemma5_suite(options)};
  if (lemma == "7") return {lemma7_suite(options)};
  if (lemma == "dkw") return {dkw_cdf_suite(options), dkw_suite(options)};
  throw std::invalid_argument("unknown lemma: " + lemma + " (expected 3, 4, 5, 7 or dkw)");
}

}  // namespace riskol
