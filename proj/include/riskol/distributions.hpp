#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "riskol/types.hpp"

namespace riskol {

/// Sorted multiset of scalar cost samples, read as a right-continuous step CDF.
class EmpiricalDistribution {
 public:
  /// Throws std::invalid_argument on an empty batch or a non-finite sample.
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  /// Fraction of samples <= y.
  double cdf(double y) const;
  double mean() const;

 private:
  std::vector<double> samples_;
};

EmpiricalDistribution build_empirical(std::vector<double> samples);

/// Left endpoint of the minimizer set of the dual objective: the m-th smallest
/// sample with m = ceil((1 - alpha) * n), and m = 1 when alpha = 1.
double var_estimate(const EmpiricalDistribution& dist, RiskLevel alpha);

/// Exact minimum of the dual objective over nu, computed from the order statistics.
double cvar(const EmpiricalDistribution& dist, RiskLevel alpha);

/// nu + 1/(alpha n) * sum_i max(J_i - nu, 0).
double cvar_dual_objective(const EmpiricalDistribution& dist, RiskLevel alpha, double nu);

/// alpha * n with values within rounding of an integer snapped onto it, so that
/// tail counts derived from it do not flip on representation error.
double tail_mass(double alpha, std::size_t n);

/// One component of a PiecewiseUniformLaw. A zero-width cell is an atom.
struct UniformCell {
  double lo;
  double hi;
  double weight;
};

/// Finite mixture of uniform laws on intervals (atoms allowed). Used as the
/// discretized law of a cost J(x, xi) when the cost is linearized per noise cell.
class PiecewiseUniformLaw {
 public:
  explicit PiecewiseUniformLaw(std::vector<UniformCell> cells);

  std::span<const UniformCell> cells() const { return cells_; }
  double cdf(double y) const;
  /// P(X < y).
  double cdf_left(double y) const;
  double mean() const;
  double min() const;
  double max() const;

 private:
  std::vector<UniformCell> cells_;
};

/// Left endpoint of the dual minimizer set, i.e. inf{y : F(y) >= 1 - alpha}.
double var_value(const PiecewiseUniformLaw& law, RiskLevel alpha);
double cvar(const PiecewiseUniformLaw& law, RiskLevel alpha);
double cvar_dual_objective(const PiecewiseUniformLaw& law, RiskLevel alpha, double nu);

/// sup_y |F(y) - G(y)| between two CDFs.
double sup_cdf_distance(const EmpiricalDistribution& f, const PiecewiseUniformLaw& g);
double sup_cdf_distance(const EmpiricalDistribution& f, const EmpiricalDistribution& g);

}  // namespace riskol
