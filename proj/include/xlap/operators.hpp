#pragma once

#include <cstddef>

#include "xlap/domain.hpp"

namespace xlap {

/// Pointwise evaluation of the infinity(x)-Laplacian at one interior node.
struct OperatorSample {
  std::size_t node = 0;
  Vec2 gradient;
  double grad_norm = 0.0;
  double infinity_laplacian = 0.0;
  /// |grad u|^2 ln|grad u| <grad u, grad ln p>
  double variable_term = 0.0;
  double total = 0.0;
};

// All operators use centered differences and reject boundary nodes with
// std::invalid_argument. They measure; the monotone schemes in solvers.hpp
// discretize differently.

Vec2 gradient_centered(const ScalarField& u, std::size_t node);

/// sum_ij u_i u_j u_ij, with the 4-point mixed stencil for u_xy.
double infinity_laplacian(const ScalarField& u, std::size_t node);

/// Exactly zero when the centered gradient vanishes (s^3 ln s -> 0).
double variable_term(const ScalarField& u, const ExponentField& p, std::size_t node);

OperatorSample infinity_x_laplacian(const ScalarField& u, const ExponentField& p, std::size_t node);

/// sup over interior nodes of |infinity_x_laplacian(u, p).total|.
double sup_residual(const ScalarField& u, const ExponentField& p);

}  // namespace xlap
