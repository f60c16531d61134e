#pragma once

#include <cstddef>
#include <span>

#include "xlap/domain.hpp"

namespace xlap {

/**
 * Constants of the stability bounds. None of them is fixed by the theory;
 * `scale` and `two_exp_const` are fitted by the harness calibration.
 */
struct BoundParams {
  /// Generic constant of C_eps = C (1 + eps) and of the quintic balance.
  double C = 1.0;
  /// Coefficient of the eps * a term (diameter of the domain).
  double a = 1.0;
  double f_sup = 0.0;
  double f_lip = 0.0;
  /// Exponent of the two-exponent bound and of ||u+ - u-|| <= B eps^kappa.
  double kappa = 1.0;
  double B = 1.0;
  /// Overall factor on the single-exponent majorant.
  double scale = 1.0;
  /// Const of Const / |ln delta|^kappa.
  double two_exp_const = 1.0;
};

/// C_eps^3 ||u2+||^2 eps^-4 ln(C_eps / eps) ||grad ln p1||, C_eps = C (1 + eps).
/// Requires 0 < eps < C_eps.
double lemma2_bound(double epsilon, double C, double u2plus_sup, double grad_ln_p_sup);

struct EpsilonChoice {
  double epsilon = 1.0;
  /// Value of ((C+eps)/eps)^5 ln((C+eps)/eps) grad eps + eps a at the chosen eps.
  double bound_value = 0.0;
  /// true when a <= 32 grad and eps = 1 was taken.
  bool large_perturbation = false;
  /// Majorant constants: C1 grad + C2 grad^{1/5} |ln(c grad)|.
  double C1 = 0.0;
  double C2 = 0.0;
  double c = 0.0;
};

/// Near-optimal eps for the single-exponent estimate: eps = 1 when
/// a <= 32 grad, else the bisection root of ((C+eps)/eps)^5 grad = a.
EpsilonChoice choose_epsilon_thm1(double grad_ln_p_sup, double a, double C);

/// scale * (C1 grad + C2 grad^{1/5} |ln(c grad)|), zero at grad = 0.
double theorem1_bound(double grad_ln_p_sup, const BoundParams& params);

/// two_exp_const / |ln delta_grad|^kappa for 0 < delta_grad < 1.
double theorem2_bound(double delta_grad, const BoundParams& params);

/// Root in (0, 1] of exp(K / eps) delta = eps^{kappa + 2}, K = (1 + grad2) v2_sup.
double choose_epsilon_sec5(double delta_grad, double grad_ln_p2_sup, double v2_sup, double kappa);

struct DoublingResult {
  double j = 0.0;
  /// sup over node pairs of u1(x) - w2(y) - (j/2)|x - y|^2
  double M = 0.0;
  std::size_t x_index = 0;
  std::size_t y_index = 0;
  Vec2 x;
  Vec2 y;
  /// max over nodes of u1 - w2
  double sigma = 0.0;
  /// j |x_j - y_j|
  double j_distance = 0.0;
};

constexpr std::size_t kMaxDoublingPairs = 100'000;

/// Exhaustive doubling-of-variables maximization. Ties go to the
/// lexicographically smallest (x, y) index pair.
DoublingResult doubling_probe(const ScalarField& u1, const ScalarField& w2, double j);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace xlap
