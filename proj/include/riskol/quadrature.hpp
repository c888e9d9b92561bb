#pragma once

#include <cstddef>
#include <vector>

#include "riskol/scenario.hpp"

namespace riskol {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// Rule for E[f(xi)] under the noise law: Gauss-Legendre mapped onto the
/// uniform support (weights sum to 1), a single node for a point mass.
QuadratureRule noise_quadrature(const NoiseLaw& noise, std::size_t n);

}  // namespace riskol
