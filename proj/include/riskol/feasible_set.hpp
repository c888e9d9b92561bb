#pragma once

#include <span>
#include <vector>

#include "riskol/types.hpp"

namespace riskol {

/// Axis-aligned box with a designated interior center used as the origin
/// when the set is shrunk for perturbed play.
class FeasibleSet {
 public:
  /// Box [lo, hi] centered at its midpoint.
  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet box(Vector lo, Vector hi, Vector center);
  /// 1-D convenience.
  static FeasibleSet interval(double lo, double hi) { return box({lo}, {hi}); }

  std::size_t dimension() const { return lo_.size(); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  const Vector& center() const { return center_; }
  /// Radius of the largest ball around center inside the box.
  double inscribed_radius() const { return radius_; }
  double diameter() const;

  bool contains(std::span<const double> x, double tol = 1e-12) const;

 private:
  FeasibleSet(Vector lo, Vector hi, Vector center);

  Vector lo_;
  Vector hi_;
  Vector center_;
  double radius_ = 0.0;
};

/// Euclidean projection, i.e. coordinate-wise clamping for a box.
Vector project(const FeasibleSet& set, std::span<const double> x);

/// The set scaled by (1 - delta / r) about its center, so that every point of
/// the result plus any perturbation of norm <= delta stays in the original set.
/// Throws std::invalid_argument when delta >= r.
FeasibleSet shrink_set(const FeasibleSet& set, double delta);

/// Tensor grid with per_dim equally spaced points per coordinate (endpoints included).
std::vector<Vector> box_grid(const FeasibleSet& set, std::size_t per_dim);

}  // namespace riskol
