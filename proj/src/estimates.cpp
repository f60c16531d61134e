#include "xlap/estimates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace xlap {

namespace {

constexpr int kBisectionSteps = 200;

// Bisection for the root of a decreasing function on [lo, hi] with
// phi(lo) > 0 >= phi(hi).
template <class F>
double bisect_decreasing(F&& phi, double lo, double hi) {
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (phi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double thm1_objective(double eps, double grad, double a, double C) {
  const double r = (C + eps) / eps;
  return std::pow(r, 5) * std::log(r) * grad * eps + eps * a;
}

}  // namespace

double lemma2_bound(double epsilon, double C, double u2plus_sup, double grad_ln_p_sup) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("lemma2_bound needs epsilon > 0");
  const double Ce = C * (1.0 + epsilon);
  if (!(epsilon < Ce)) throw std::invalid_argument("lemma2_bound needs epsilon < C_eps = C (1 + epsilon)");
  return Ce * Ce * Ce * u2plus_sup * u2plus_sup / std::pow(epsilon, 4) * std::log(Ce / epsilon) * grad_ln_p_sup;
}

EpsilonChoice choose_epsilon_thm1(double grad_ln_p_sup, double a, double C) {
  if (!(grad_ln_p_sup >= 0.0) || !(a > 0.0) || !(C > 0.0))
    throw std::invalid_argument("choose_epsilon_thm1 needs grad >= 0 and a, C > 0");
  EpsilonChoice out;
  out.C1 = std::pow(C + 1.0, 5) * std::log(C + 1.0) + 32.0;
  out.C2 = 0.4 * C * std::pow(a, 0.8);
  out.c = 1.0 / (a * std::exp(5.0));

  const double g = grad_ln_p_sup;
  if (g == 0.0) {
    out.epsilon = 0.0;
    out.bound_value = 0.0;
    return out;
  }
  if (a <= 32.0 * g) {
    out.large_perturbation = true;
    out.epsilon = 1.0;
    out.bound_value = thm1_objective(1.0, g, a, C);
    return out;
  }
  // 5 ln((C + eps)/eps) + ln(g/a), decreasing in eps; negative at eps = C.
  const double log_ratio = std::log(g / a);
  auto phi = [&](double log_eps) {
    const double eps = std::exp(log_eps);
    return 5.0 * std::log1p(C / eps) + log_ratio;
  };
  const double log_eps = bisect_decreasing(phi, std::log(C) - 700.0, std::log(C));
  out.epsilon = std::exp(log_eps);
  out.bound_value = thm1_objective(out.epsilon, g, a, C);
  return out;
}

double theorem1_bound(double grad_ln_p_sup, const BoundParams& params) {
  if (!(grad_ln_p_sup >= 0.0)) throw std::invalid_argument("theorem1_bound needs grad >= 0");
  if (grad_ln_p_sup == 0.0) return 0.0;
  const EpsilonChoice e = choose_epsilon_thm1(grad_ln_p_sup, params.a, params.C);
  const double g = grad_ln_p_sup;
  return params.scale * (e.C1 * g + e.C2 * std::pow(g, 0.2) * std::abs(std::log(e.c * g)));
}

double theorem2_bound(double delta_grad, const BoundParams& params) {
  if (!(delta_grad > 0.0 && delta_grad < 1.0))
    throw std::invalid_argument("theorem2_bound needs 0 < delta_grad < 1");
  return params.two_exp_const / std::pow(std::abs(std::log(delta_grad)), params.kappa);
}

double choose_epsilon_sec5(double delta_grad, double grad_ln_p2_sup, double v2_sup, double kappa) {
  if (!(delta_grad > 0.0 && delta_grad < 1.0))
    throw std::invalid_argument("choose_epsilon_sec5 needs 0 < delta_grad < 1");
  if (!(grad_ln_p2_sup >= 0.0) || !(v2_sup >= 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("choose_epsilon_sec5 needs nonnegative norms and kappa > 0");
  const double K = (1.0 + grad_ln_p2_sup) * v2_sup;
  const double log_delta = std::log(delta_grad);
  // log form: K/eps + ln delta - (kappa + 2) ln eps, decreasing in eps
  auto phi = [&](double log_eps) { return K * std::exp(-log_eps) + log_delta - (kappa + 2.0) * log_eps; };
  if (phi(0.0) > 0.0)
    throw std::domain_error("no balancing epsilon in (0, 1]: the exponent difference is too large, use a smaller delta");
  return std::exp(bisect_decreasing(phi, -700.0, 0.0));
}

DoublingResult doubling_probe(const ScalarField& u1, const ScalarField& w2, double j) {
  if (!(u1.grid() == w2.grid())) throw std::invalid_argument("doubling probe needs fields on the same grid");
  if (!(j > 0.0)) throw std::invalid_argument("doubling probe needs j > 0");
  const Grid& g = u1.grid();
  const std::size_t N = g.size();
  if (N * N > kMaxDoublingPairs)
    throw std::invalid_argument("doubling probe is limited to " + std::to_string(kMaxDoublingPairs) + " node pairs");

  std::vector<Vec2> xs(N);
  for (std::size_t k = 0; k < N; ++k) xs[k] = g.coord(k);

  std::vector<double> best(N, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> arg(N, 0);
  const auto n_long = static_cast<long>(N);
#pragma omp parallel for schedule(static)
  for (long xi = 0; xi < n_long; ++xi) {
    const auto x = static_cast<std::size_t>(xi);
    for (std::size_t y = 0; y < N; ++y) {
      const Vec2 d = xs[x] - xs[y];
      const double v = u1[x] - w2[y] - 0.5 * j * dot(d, d);
      if (v > best[x]) {
        best[x] = v;
        arg[x] = y;
      }
    }
  }

  DoublingResult r;
  r.j = j;
  r.M = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < N; ++x) {
    if (best[x] > r.M) {
      r.M = best[x];
      r.x_index = x;
      r.y_index = arg[x];
    }
  }
  r.x = xs[r.x_index];
  r.y = xs[r.y_index];
  r.sigma = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < N; ++k) r.sigma = std::max(r.sigma, u1[k] - w2[k]);
  r.j_distance = j * norm(r.x - r.y);
  return r;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two or more pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace xlap
