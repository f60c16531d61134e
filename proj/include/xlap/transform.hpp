#pragma once

#include <cstddef>
#include <vector>

#include "xlap/domain.hpp"

namespace xlap {

/**
 * Approximation of the identity
 *
 *     g(t) = (1/alpha) ln(1 + A (e^{alpha t} - 1)),   A >= 1, alpha > 0.
 *
 * For A > 1 and t > 0 it satisfies 0 < g(t) - t < ln(A)/alpha,
 * (A-1) e^{-alpha t} / A < g'(t) - 1 <= A - 1 and g''/g' = -alpha (g' - 1).
 */
struct TransformParams {
  double A = 1.0;
  double alpha = 1.0;

  void validate() const;
};

struct TransformDerivatives {
  double first = 1.0;
  double second = 0.0;
  /// g' - 1 without cancellation: (A-1) e^{-alpha t} / (A - (A-1) e^{-alpha t})
  double first_minus_one = 0.0;
};

/// Evaluated as t + log1p((A-1)(1 - e^{-alpha t})) / alpha, which never overflows.
double g_eval(double t, const TransformParams& prm);

/// g' and g'' from their closed forms; the g''/g' identity is left to tests.
TransformDerivatives g_derivatives(double t, const TransformParams& prm);

/// Nodewise g. Rejects negative values: shift the field by a constant first.
ScalarField g_apply(const ScalarField& v, const TransformParams& prm);

/// Strict-supersolution margin mu = alpha (A-1)/A e^{-alpha v_sup} eps^4.
/// With `alpha_from_sup` the alpha of `prm` is replaced by 1/v_sup, which
/// gives mu = (A-1) eps^4 / (A e v_sup).
double mu_section4(const TransformParams& prm, double epsilon, double v_sup, bool alpha_from_sup = false);

struct VariableMu {
  double mu = 0.0;
  /// alpha = (1 + ||grad ln p||) / eps, so that -alpha eps + ||grad ln p|| = -1.
  double alpha = 0.0;
};

/// mu = eps^3 (A-1)/A exp(-(1 + ||grad ln p||) v_sup / eps).
VariableMu mu_section5(double A, double epsilon, double v_sup, double grad_ln_p_sup);

struct SupersolutionReport {
  bool passed = false;
  /// max over interior nodes of the discrete infinity-Laplacian of w.
  double max_value = 0.0;
  /// -mu + slack
  double threshold = 0.0;
  std::vector<std::size_t> violations;
};

/// Passes iff the centered infinity-Laplacian of w is <= -mu + slack at
/// every interior node.
SupersolutionReport strict_supersolution_check(const ScalarField& w, double mu, double slack);

}  // namespace xlap
