#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "riskol/feasible_set.hpp"
#include "riskol/types.hpp"

namespace riskol {

using Rng = std::mt19937_64;

/// Scalar noise law with bounded support.
class NoiseLaw {
 public:
  enum class Kind { uniform, point_mass };

  static NoiseLaw uniform(double lo, double hi);
  static NoiseLaw point_mass(double value);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mean() const { return 0.5 * (lo_ + hi_); }
  double variance() const { return (hi_ - lo_) * (hi_ - lo_) / 12.0; }

  double sample(Rng& rng) const;

 private:
  NoiseLaw(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

/// Time-indexed scalar sequence, t = 1..T (t = 0 is accepted by the formula-based ones).
using Schedule = std::function<double(int)>;

using CostFn = std::function<double(int t, std::span<const double> x, double xi)>;
using CostGradientFn = std::function<Vector(int t, std::span<const double> x, double xi)>;

/// Parameters of the parking-price occupancy model r = xi + A x.
struct ParkingModel {
  double elasticity = -0.15;
  double regularization = 0.005;
  Schedule target;
};

/// A non-stationary risk-averse problem: cost schedule J_t, risk schedule
/// alpha_t, noise law and feasible set over a finite horizon.
struct Scenario {
  std::string name;
  int horizon = 0;
  NoiseLaw noise = NoiseLaw::point_mass(0.0);
  Schedule risk;
  FeasibleSet set = FeasibleSet::interval(0.0, 1.0);
  CostFn cost;
  /// Empty for bandit-only scenarios.
  CostGradientFn gradient;
  /// Optional: steps returning equal keys share the same C_t, which lets the
  /// oracle reuse per-step optima.
  std::function<Vector(int)> regime;
  std::optional<ParkingModel> parking;

  RiskLevel alpha(int t) const { return RiskLevel(risk(t)); }
  std::size_t dimension() const { return set.dimension(); }
};

struct ParkingOptions {
  double elasticity = -0.15;
  double regularization = 0.005;
  double noise_lo = 0.9;
  double noise_hi = 1.1;
  double price_lo = 0.0;
  double price_hi = 10.0;
};

/// J_t(x, xi) = (xi + A x - r_t)^2 + (v / 2) x^2 on the price interval.
Scenario make_parking_scenario(std::string name, int horizon, Schedule target, Schedule risk,
                               const ParkingOptions& options = {});

/// Mean occupancy E[xi] + A x of the parking model at price x.
double mean_occupancy(const Scenario& scenario, double price);

}  // namespace riskol
