#include "xlap/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "xlap/operators.hpp"

namespace xlap {

void TransformParams::validate() const {
  if (!(A >= 1.0) || !std::isfinite(A)) throw std::invalid_argument("transform needs A >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("transform needs alpha > 0");
}

namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("g is defined for t >= 0");
}

// 1 - e^{-alpha t}, accurate for small alpha t
double one_minus_decay(double t, double alpha) { return -std::expm1(-alpha * t); }

void warn_large_A(double A) {
  if (A > 2.0) std::clog << "xlap: warning: A = " << A << " exceeds 2; the comparison constant grows with A\n";
}

}  // namespace

double g_eval(double t, const TransformParams& prm) {
  prm.validate();
  require_nonnegative(t);
  return t + std::log1p((prm.A - 1.0) * one_minus_decay(t, prm.alpha)) / prm.alpha;
}

TransformDerivatives g_derivatives(double t, const TransformParams& prm) {
  prm.validate();
  require_nonnegative(t);
  const double A = prm.A;
  const double decay = std::exp(-prm.alpha * t);
  // denominator A - (A-1) e^{-alpha t} = 1 + (A-1)(1 - e^{-alpha t})
  const double den = 1.0 + (A - 1.0) * one_minus_decay(t, prm.alpha);
  TransformDerivatives d;
  d.first = A / den;
  d.second = -A * (A - 1.0) * prm.alpha * decay / (den * den);
  d.first_minus_one = (A - 1.0) * decay / den;
  return d;
}

ScalarField g_apply(const ScalarField& v, const TransformParams& prm) {
  prm.validate();
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 0.0)
      throw std::invalid_argument("g_apply needs a nonnegative field; add a constant to the boundary data first");
    out[k] = g_eval(v[k], prm);
  }
  return ScalarField(v.grid(), std::move(out));
}

double mu_section4(const TransformParams& prm, double epsilon, double v_sup, bool alpha_from_sup) {
  if (!(prm.A > 1.0)) throw std::invalid_argument("a strict supersolution needs A > 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("a strict supersolution needs epsilon > 0");
  if (!(v_sup >= 0.0)) throw std::invalid_argument("v_sup must be nonnegative");
  warn_large_A(prm.A);
  const double eps4 = epsilon * epsilon * epsilon * epsilon;
  if (alpha_from_sup) {
    if (!(v_sup > 0.0)) throw std::invalid_argument("alpha = 1/v_sup needs v_sup > 0");
    return (prm.A - 1.0) * eps4 / (prm.A * std::numbers::e * v_sup);
  }
  if (!(prm.alpha > 0.0)) throw std::invalid_argument("transform needs alpha > 0");
  return prm.alpha * (prm.A - 1.0) / prm.A * std::exp(-prm.alpha * v_sup) * eps4;
}

VariableMu mu_section5(double A, double epsilon, double v_sup, double grad_ln_p_sup) {
  if (!(A > 1.0)) throw std::invalid_argument("a strict supersolution needs A > 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("a strict supersolution needs epsilon > 0");
  if (!(v_sup >= 0.0) || !(grad_ln_p_sup >= 0.0)) throw std::invalid_argument("sup norms must be nonnegative");
  warn_large_A(A);
  VariableMu r;
  r.alpha = (1.0 + grad_ln_p_sup) / epsilon;
  r.mu = epsilon * epsilon * epsilon * (A - 1.0) / A * std::exp(-r.alpha * v_sup);
  return r;
}

SupersolutionReport strict_supersolution_check(const ScalarField& w, double mu, double slack) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  SupersolutionReport rep;
  rep.threshold = -mu + slack;
  rep.max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k : w.grid().interior_nodes()) {
    const double L = infinity_laplacian(w, k);
    rep.max_value = std::max(rep.max_value, L);
    if (L > rep.threshold) rep.violations.push_back(k);
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace xlap
