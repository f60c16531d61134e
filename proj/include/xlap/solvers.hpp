#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xlap/domain.hpp"

namespace xlap {

struct SolveConfig {
  /// Gradient threshold of the auxiliary equations; 0 switches them off.
  double epsilon = 0.0;
  /// Sup-norm bound on one Jacobi update. Unset means 1e-9 (max f - min f + 1).
  std::optional<double> tolerance;
  long max_iterations = 5'000'000;
  /// Floor inside ln|grad u| of the variable-exponent scheme. Unset means h.
  std::optional<double> gradient_floor;
  double relaxation = 1.0;

  void validate() const;
  double resolved_tolerance(const BoundaryData& f) const;
  double resolved_gradient_floor(const Grid& grid) const;
};

struct SolveResult {
  ScalarField field;
  long iterations = 0;
  /// Sup-norm of the last Jacobi update.
  double final_update = 0.0;
  /// sup over interior nodes of |update(u) - u| * 2 / h^2, i.e. the scheme
  /// operator in normalized units.
  double residual = 0.0;
  bool converged = false;
};

/// Pointwise rule of the monotone Jacobi schemes.
enum class Scheme {
  /// (max_N u + min_N u) / 2
  midpoint,
  /// max(midpoint, min_y (u_y + eps |y - x|)): upper equation, u+ >= u
  upper,
  /// min(midpoint, max_y (u_y - eps |y - x|)): lower equation, u- <= u
  lower,
};

/// One unrelaxed pointwise update at an interior node. With a non-null
/// exponent field the midpoint is replaced by the value u_x solving
/// u_x = midpoint + (h^2 / 2) ln(max(|grad u|, floor)) <D u, grad ln p>, where
/// D is the per-axis upwind difference and the centered |grad u| is frozen.
double scheme_update(const Grid& grid, std::span<const double> u, std::size_t node, Scheme scheme,
                     const ExponentField* p, double epsilon, double gradient_floor);

/// Boundary data on the boundary; linear (1D) or Coons-blended (2D)
/// interpolation in the interior, clamped to [min f, max f].
std::vector<double> initial_guess(const Grid& grid, const BoundaryData& f);

SolveResult solve_infinity_harmonic(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg);
SolveResult solve_infinity_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                             const SolveConfig& cfg);
SolveResult solve_upper(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg);
SolveResult solve_lower(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg);
SolveResult solve_upper_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                          const SolveConfig& cfg);
SolveResult solve_lower_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                          const SolveConfig& cfg);

/**
 * Lower, plain and upper problems iterated in lockstep from the same
 * initial guess until all three have converged.
 *
 * Sharing the iteration count makes the ordering u- <= u <= u+ hold for
 * every iterate when the scheme is monotone (constant exponent), since
 * the lower rule never exceeds the midpoint and the upper rule never
 * falls below it.
 */
struct SandwichResult {
  SolveResult lower;
  SolveResult middle;
  SolveResult upper;
  /// max(0, max(u- - u), max(u - u+)) over all nodes.
  double ordering_violation = 0.0;
  /// ||u+ - u-||_inf
  double gap = 0.0;

  bool ordered() const { return ordering_violation == 0.0; }
  bool converged() const { return lower.converged && middle.converged && upper.converged; }
};

SandwichResult solve_sandwich(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg);
SandwichResult solve_sandwich_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                                const SolveConfig& cfg);

}  // namespace xlap
