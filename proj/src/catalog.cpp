#include "riskol/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riskol {

Schedule step_target(int switch_step) {
  return [switch_step](int t) { return t <= switch_step ? 0.65 : 0.7; };
}

Schedule step_risk(int switch_step) {
  return [switch_step](int t) { return t <= switch_step ? 0.5 : 0.8; };
}

Schedule sinusoidal_target(int horizon) {
  return [horizon](int t) { return 0.7 + 0.05 * std::cos(2.0 * std::numbers::pi * t / horizon); };
}

Schedule sinusoidal_risk(int horizon) {
  return [horizon](int t) { return 0.5 + 0.3 * std::cos(2.0 * std::numbers::pi * t / horizon); };
}

Schedule switching(int m, int horizon, double low, double high) {
  return [m, horizon, low, high](int t) {
    const long long phase = (static_cast<long long>(t) << m) / horizon;
    return phase % 2 == 0 ? low : high;
  };
}

namespace {

Schedule constant(double v) {
  return [v](int) { return v; };
}

}  // namespace

std::vector<CatalogEntry> builtin_scenarios() {
  return {
      {"static", "r_d = 0.7, alpha = 0.5 for all t"},
      {"step", "r_d 0.65 -> 0.7 and alpha 0.5 -> 0.8 after t = 200"},
      {"sinusoidal", "r_d = 0.7 + 0.05 cos(2 pi t / T), alpha = 0.5 + 0.3 cos(2 pi t / T)"},
      {"vf_sweep_m1", "r_d switches 0.65/0.7 on floor(2 t / T) parity, alpha = 0.5"},
      {"vf_sweep_m2", "r_d switches 0.65/0.7 on floor(4 t / T) parity, alpha = 0.5"},
      {"vf_sweep_m3", "r_d switches 0.65/0.7 on floor(8 t / T) parity, alpha = 0.5"},
      {"valpha_sweep_m1", "alpha switches 0.1/0.8 on floor(2 t / T) parity, r_d = 0.7"},
      {"valpha_sweep_m2", "alpha switches 0.1/0.8 on floor(4 t / T) parity, r_d = 0.7"},
      {"valpha_sweep_m3", "alpha switches 0.1/0.8 on floor(8 t / T) parity, r_d = 0.7"},
      {"sample_sweep", "step schedules, run with n_t in {1, 4, 16}"},
      {"baselines", "step schedules, first-order learner against ignore-V_f, ignore-V_alpha and static price"},
  };
}

Scenario make_builtin_scenario(const std::string& id, const CaseStudy& study) {
  const int T = study.horizon;
  const auto& p = study.parking;
  if (id == "static") return make_parking_scenario(id, T, constant(0.7), constant(0.5), p);
  if (id == "step" || id == "sample_sweep" || id == "baselines") {
    return make_parking_scenario(id, T, step_target(), step_risk(), p);
  }
  if (id == "sinusoidal") return make_parking_scenario(id, T, sinusoidal_target(T), sinusoidal_risk(T), p);
  for (int m = 1; m <= 3; ++m) {
    if (id == "vf_sweep_m" + std::to_string(m)) {
      return make_parking_scenario(id, T, switching(m, T, 0.65, 0.7), constant(0.5), p);
    }
    if (id == "valpha_sweep_m" + std::to_string(m)) {
      return make_parking_scenario(id, T, constant(0.7), switching(m, T, 0.1, 0.8), p);
    }
  }
  throw std::invalid_argument("unknown scenario id: " + id);
}

}  // namespace riskol
