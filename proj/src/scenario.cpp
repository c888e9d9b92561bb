#include "riskol/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace riskol {

NoiseLaw NoiseLaw::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("uniform noise law requires finite lo < hi");
  }
  return NoiseLaw(Kind::uniform, lo, hi);
}

NoiseLaw NoiseLaw::point_mass(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("point-mass noise must be finite");
  return NoiseLaw(Kind::point_mass, value, value);
}

double NoiseLaw::sample(Rng& rng) const {
  if (kind_ == Kind::point_mass) return lo_;
  std::uniform_real_distribution<double> dist(lo_, hi_);
  return dist(rng);
}

Scenario make_parking_scenario(std::string name, int horizon, Schedule target, Schedule risk,
                               const ParkingOptions& options) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  Scenario s;
  s.name = std::move(name);
  s.horizon = horizon;
  s.noise = options.noise_lo == options.noise_hi ? NoiseLaw::point_mass(options.noise_lo)
                                                  : NoiseLaw::uniform(options.noise_lo, options.noise_hi);
  s.risk = risk;
  s.set = FeasibleSet::interval(options.price_lo, options.price_hi);
  const double a = options.elasticity;
  const double v = options.regularization;
  s.cost = [a, v, target](int t, std::span<const double> x, double xi) {
    const double gap = xi + a * x[0] - target(t);
    return gap * gap + 0.5 * v * x[0] * x[0];
  };
  s.gradient = [a, v, target](int t, std::span<const double> x, double xi) {
    const double gap = xi + a * x[0] - target(t);
    return Vector{2.0 * a * gap + v * x[0]};
  };
  s.regime = [target, risk](int t) { return Vector{target(t), risk(t)}; };
  s.parking = ParkingModel{a, v, std::move(target)};
  return s;
}

double mean_occupancy(const Scenario& scenario, double price) {
  if (!scenario.parking) throw std::invalid_argument("scenario has no occupancy model");
  return scenario.noise.mean() + scenario.parking->elasticity * price;
}

}  // namespace riskol
