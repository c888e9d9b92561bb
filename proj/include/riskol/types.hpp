#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskol {

using Vector = std::vector<double>;

/// Confidence level of the CVaR: the fraction of worst outcomes averaged.
class RiskLevel {
 public:
  explicit RiskLevel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("risk level must lie in (0, 1], got " + std::to_string(alpha));
    }
  }

  double value() const { return alpha_; }

  friend bool operator==(RiskLevel a, RiskLevel b) { return a.alpha_ == b.alpha_; }

 private:
  double alpha_;
};

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace riskol
