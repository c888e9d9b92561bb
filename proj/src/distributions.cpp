#include "riskol/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace riskol {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("empty sample batch");
  for (double s : samples_) {
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double y) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), y);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::mean() const {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
}

EmpiricalDistribution build_empirical(std::vector<double> samples) {
  return EmpiricalDistribution(std::move(samples));
}

double tail_mass(double alpha, std::size_t n) {
  const double scaled = alpha * static_cast<double>(n);
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, scaled)) return nearest;
  return scaled;
}

double var_estimate(const EmpiricalDistribution& dist, RiskLevel alpha) {
  const std::size_t n = dist.size();
  const double an = tail_mass(alpha.value(), n);
  auto m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) - an));
  m = std::clamp<std::size_t>(m, 1, n);
  return dist.samples()[m - 1];
}

double cvar(const EmpiricalDistribution& dist, RiskLevel alpha) {
  const auto s = dist.samples();
  const std::size_t n = s.size();
  const double an = tail_mass(alpha.value(), n);
  auto k = static_cast<std::size_t>(std::ceil(an));
  k = std::clamp<std::size_t>(k, 1, n);
  // Descending order statistic i (1-based) is s[n - i].
  double tail = 0.0;
  for (std::size_t i = 1; i < k; ++i) tail += s[n - i];
  return tail / an + (an - static_cast<double>(k - 1)) / an * s[n - k];
}

double cvar_dual_objective(const EmpiricalDistribution& dist, RiskLevel alpha, double nu) {
  double excess = 0.0;
  for (double j : dist.samples()) excess += std::max(j - nu, 0.0);
  return nu + excess / (alpha.value() * static_cast<double>(dist.size()));
}

PiecewiseUniformLaw::PiecewiseUniformLaw(std::vector<UniformCell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("piecewise-uniform law needs at least one cell");
  double total = 0.0;
  for (auto& c : cells_) {
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi) || !(c.weight >= 0.0)) {
      throw std::invalid_argument("invalid cell in piecewise-uniform law");
    }
    if (c.lo > c.hi) std::swap(c.lo, c.hi);
    total += c.weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("piecewise-uniform law has zero mass");
  for (auto& c : cells_) c.weight /= total;
}

double PiecewiseUniformLaw::cdf(double y) const {
  double f = 0.0;
  for (const auto& c : cells_) {
    if (y >= c.hi) {
      f += c.weight;
    } else if (y > c.lo) {
      f += c.weight * (y - c.lo) / (c.hi - c.lo);
    }
  }
  return std::min(f, 1.0);
}

double PiecewiseUniformLaw::cdf_left(double y) const {
  double f = 0.0;
  for (const auto& c : cells_) {
    if (c.hi == c.lo) {
      if (y > c.lo) f += c.weight;
    } else if (y >= c.hi) {
      f += c.weight;
    } else if (y > c.lo) {
      f += c.weight * (y - c.lo) / (c.hi - c.lo);
    }
  }
  return std::min(f, 1.0);
}

double PiecewiseUniformLaw::mean() const {
  double m = 0.0;
  for (const auto& c : cells_) m += c.weight * 0.5 * (c.lo + c.hi);
  return m;
}

double PiecewiseUniformLaw::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : cells_) {
    if (c.weight > 0.0) m = std::min(m, c.lo);
  }
  return m;
}

double PiecewiseUniformLaw::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& c : cells_) {
    if (c.weight > 0.0) m = std::max(m, c.hi);
  }
  return m;
}

double var_value(const PiecewiseUniformLaw& law, RiskLevel alpha) {
  const double target = 1.0 - alpha.value();
  constexpr double kTol = 1e-13;
  if (target <= kTol) return law.min();

  // Sweep the piecewise-linear CDF: slope changes at cell ends, jumps at atoms.
  struct Event {
    double at;
    double slope;
    double jump;
  };
  std::vector<Event> events;
  events.reserve(2 * law.cells().size());
  for (const auto& c : law.cells()) {
    if (c.weight <= 0.0) continue;
    if (c.hi == c.lo) {
      events.push_back({c.lo, 0.0, c.weight});
    } else {
      const double density = c.weight / (c.hi - c.lo);
      events.push_back({c.lo, density, 0.0});
      events.push_back({c.hi, -density, 0.0});
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.at < b.at; });

  double f = 0.0;
  double slope = 0.0;
  double pos = events.front().at;
  std::size_t i = 0;
  while (i < events.size()) {
    const double at = events[i].at;
    const double f_before = f + slope * (at - pos);
    if (f_before >= target - kTol && slope > 0.0) {
      return std::clamp(pos + (target - f) / slope, pos, at);
    }
    f = f_before;
    pos = at;
    double jump = 0.0;
    for (; i < events.size() && events[i].at == at; ++i) {
      jump += events[i].jump;
      slope += events[i].slope;
    }
    f += jump;
    if (f >= target - kTol) return at;
    slope = std::max(slope, 0.0);
  }
  return law.max();
}

double cvar_dual_objective(const PiecewiseUniformLaw& law, RiskLevel alpha, double nu) {
  double excess = 0.0;
  for (const auto& c : law.cells()) {
    if (nu <= c.lo) {
      excess += c.weight * (0.5 * (c.lo + c.hi) - nu);
    } else if (nu < c.hi) {
      excess += c.weight * (c.hi - nu) * (c.hi - nu) / (2.0 * (c.hi - c.lo));
    }
  }
  return nu + excess / alpha.value();
}

double cvar(const PiecewiseUniformLaw& law, RiskLevel alpha) {
  return cvar_dual_objective(law, alpha, var_value(law, alpha));
}

double sup_cdf_distance(const EmpiricalDistribution& f, const PiecewiseUniformLaw& g) {
  const auto s = f.samples();
  const double n = static_cast<double>(s.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Right value at s[i] and left limit; the step function is flat in between.
    auto hi = std::upper_bound(s.begin(), s.end(), s[i]);
    auto lo = std::lower_bound(s.begin(), s.end(), s[i]);
    const double right = static_cast<double>(hi - s.begin()) / n;
    const double left = static_cast<double>(lo - s.begin()) / n;
    sup = std::max(sup, std::abs(right - g.cdf(s[i])));
    sup = std::max(sup, std::abs(left - g.cdf_left(s[i])));
  }
  return sup;
}

double sup_cdf_distance(const EmpiricalDistribution& f, const EmpiricalDistribution& g) {
  double sup = 0.0;
  for (double y : f.samples()) sup = std::max(sup, std::abs(f.cdf(y) - g.cdf(y)));
  for (double y : g.samples()) sup = std::max(sup, std::abs(f.cdf(y) - g.cdf(y)));
  return sup;
}

}  // namespace riskol
