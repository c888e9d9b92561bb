#include "riskol/feasible_set.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace riskol {

FeasibleSet::FeasibleSet(Vector lo, Vector hi, Vector center)
    : lo_(std::move(lo)), hi_(std::move(hi)), center_(std::move(center)) {
  if (lo_.empty() || lo_.size() != hi_.size() || lo_.size() != center_.size()) {
    throw std::invalid_argument("box bounds and center must share a positive dimension");
  }
  radius_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i])) throw std::invalid_argument("box requires lo < hi in every coordinate");
    if (!(center_[i] > lo_[i] && center_[i] < hi_[i])) {
      throw std::invalid_argument("box center must be strictly inside the box");
    }
    radius_ = std::min({radius_, center_[i] - lo_[i], hi_[i] - center_[i]});
  }
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  Vector center(lo.size());
  for (std::size_t i = 0; i < lo.size() && i < hi.size(); ++i) center[i] = 0.5 * (lo[i] + hi[i]);
  return FeasibleSet(std::move(lo), std::move(hi), std::move(center));
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi, Vector center) {
  return FeasibleSet(std::move(lo), std::move(hi), std::move(center));
}

double FeasibleSet::diameter() const { return distance(lo_, hi_); }

bool FeasibleSet::contains(std::span<const double> x, double tol) const {
  if (x.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  }
  return true;
}

Vector project(const FeasibleSet& set, std::span<const double> x) {
  if (x.size() != set.dimension()) throw std::invalid_argument("projection: dimension mismatch");
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], set.lo()[i], set.hi()[i]);
  return y;
}

FeasibleSet shrink_set(const FeasibleSet& set, double delta) {
  if (delta < 0.0) throw std::invalid_argument("smoothing radius must be non-negative");
  if (delta >= set.inscribed_radius()) {
    throw std::invalid_argument("smoothing radius exceeds inscribed radius");
  }
  if (delta == 0.0) return set;
  const double scale = 1.0 - delta / set.inscribed_radius();
  const auto& c = set.center();
  Vector lo(c.size());
  Vector hi(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    lo[i] = c[i] + scale * (set.lo()[i] - c[i]);
    hi[i] = c[i] + scale * (set.hi()[i] - c[i]);
  }
  return FeasibleSet::box(std::move(lo), std::move(hi), c);
}

std::vector<Vector> box_grid(const FeasibleSet& set, std::size_t per_dim) {
  if (per_dim < 2) throw std::invalid_argument("grid needs at least two points per dimension");
  const std::size_t d = set.dimension();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_dim;
  std::vector<Vector> grid;
  grid.reserve(total);
  const double last = static_cast<double>(per_dim - 1);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Vector p(d);
    std::size_t rest = flat;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t k = rest % per_dim;
      rest /= per_dim;
      const double frac = static_cast<double>(k) / last;
      p[i] = k + 1 == per_dim ? set.hi()[i] : set.lo()[i] + frac * (set.hi()[i] - set.lo()[i]);
    }
    grid.push_back(std::move(p));
  }
  return grid;
}

}  // namespace riskol
