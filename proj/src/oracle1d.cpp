#include "xlap/oracle1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xlap {

double integrate_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                         int max_refinements) {
  if (!(b > a)) throw std::invalid_argument("integration interval must satisfy a < b");
  int m = 2;
  double h = (b - a) / m;
  const double ends = f(a) + f(b);
  double odd = f(a + h);
  double even = 0.0;
  double simpson = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  double previous = simpson;
  for (int level = 0; level < max_refinements; ++level) {
    even += odd;
    m *= 2;
    h = (b - a) / m;
    odd = 0.0;
    for (int i = 1; i < m; i += 2) odd += f(a + i * h);
    const double refined = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double richardson = refined + (refined - simpson) / 15.0;
    if (level > 0 && std::abs(richardson - previous) < tol) return richardson;
    previous = richardson;
    simpson = refined;
  }
  throw std::runtime_error("Simpson quadrature did not reach the requested tolerance");
}

namespace {

double first_integral(const ExponentFunction& p, double log_C, double a, double b, double tol, int refinements) {
  return integrate_simpson([&](double t) { return std::exp(log_C / p(t)); }, a, b, tol, refinements);
}

}  // namespace

FirstIntegralSolution solve_first_integral(const ExponentFunction& p, double a, double b, double fa, double fb,
                                           int n_nodes, const OracleOptions& opt) {
  if (!(b > a)) throw std::invalid_argument("first integral needs a < b");
  if (n_nodes < 3) throw std::invalid_argument("first integral needs at least 3 output nodes");

  const Grid grid = Grid::interval(a, b, n_nodes);
  FirstIntegralSolution sol{0.0, 0, 0.0, {}, {}, ScalarField::constant(grid, fa)};
  sol.nodes.resize(static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k) sol.nodes[static_cast<std::size_t>(k)] = grid.coord(static_cast<std::size_t>(k)).x;

  if (fa == fb) {
    sol.values.assign(sol.nodes.size(), fa);
    return sol;
  }

  double p_min = p(a);
  double p_max = p_min;
  for (int k = 0; k <= 256; ++k) {
    const double pv = p(a + (b - a) * k / 256.0);
    if (!(pv > 0.0) || !std::isfinite(pv)) throw std::invalid_argument("exponent must be positive on [a, b]");
    p_min = std::min(p_min, pv);
    p_max = std::max(p_max, pv);
  }

  const double target = std::abs(fb - fa);
  const double log_m = std::log(target / (b - a));
  double lo = std::min(p_min * log_m, p_max * log_m);
  double hi = std::max(p_min * log_m, p_max * log_m);
  auto I = [&](double log_C) { return first_integral(p, log_C, a, b, opt.quad_tol, opt.max_refinements); };
  // Widen by factors of 2 in C until the target is bracketed.
  for (int it = 0; I(lo) > target; ++it) {
    if (it > 2000) throw std::logic_error("first-integral bracket failure");
    lo -= std::numbers::ln2;
  }
  for (int it = 0; I(hi) < target; ++it) {
    if (it > 2000) throw std::logic_error("first-integral bracket failure");
    hi += std::numbers::ln2;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (I(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double log_C = 0.5 * (lo + hi);
  sol.C = std::exp(log_C);
  sol.sign = fb > fa ? 1 : -1;
  sol.residual = std::abs(I(log_C) - target);

  sol.values.resize(sol.nodes.size());
  sol.values.front() = fa;
  const double piece_tol = opt.quad_tol / (n_nodes - 1);
  double acc = 0.0;
  for (std::size_t k = 1; k + 1 < sol.nodes.size(); ++k) {
    acc += first_integral(p, log_C, sol.nodes[k - 1], sol.nodes[k], piece_tol, opt.max_refinements);
    sol.values[k] = fa + sol.sign * acc;
  }
  sol.values.back() = fb;
  sol.field = ScalarField(grid, sol.values);
  return sol;
}

double stability_1d_exact(const ExponentFunction& p1, const ExponentFunction& p2, double a, double b, double fa,
                          double fb, int samples, const OracleOptions& opt) {
  const auto s1 = solve_first_integral(p1, a, b, fa, fb, samples, opt);
  const auto s2 = solve_first_integral(p2, a, b, fa, fb, samples, opt);
  return sup_difference(s1.field, s2.field);
}

}  // namespace xlap
