#pragma once

#include <functional>
#include <vector>

#include "xlap/domain.hpp"

namespace xlap {

using ExponentFunction = std::function<double(double)>;

/**
 * Exact 1D solution through the first integral |u'(x)|^{p(x)} = C.
 *
 * The constant C solves int_a^b C^{1/p(t)} dt = |fb - fa|, and
 * u(x) = fa + sign * int_a^x C^{1/p(t)} dt.
 */
struct FirstIntegralSolution {
  double C = 0.0;
  int sign = 0;
  /// |int_a^b C^{1/p} - |fb - fa|| at the returned C.
  double residual = 0.0;
  std::vector<double> nodes;
  std::vector<double> values;
  ScalarField field;
};

struct OracleOptions {
  double quad_tol = 1e-12;
  int max_refinements = 22;
};

/// Composite Simpson on [a, b], doubling the panel count until two
/// successive Richardson-corrected values differ by less than `tol`.
/// Throws std::runtime_error when the refinement budget runs out.
double integrate_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                         int max_refinements = 22);

FirstIntegralSolution solve_first_integral(const ExponentFunction& p, double a, double b, double fa, double fb,
                                           int n_nodes, const OracleOptions& opt = {});

/// Exact sup over `samples` equispaced points of |u1 - u2| for the two
/// first-integral solutions with the same boundary values.
double stability_1d_exact(const ExponentFunction& p1, const ExponentFunction& p2, double a, double b, double fa,
                          double fb, int samples, const OracleOptions& opt = {});

}  // namespace xlap
