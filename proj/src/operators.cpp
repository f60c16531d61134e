#include "xlap/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlap {

namespace {

void require_interior(const Grid& grid, std::size_t node) {
  if (node >= grid.size() || !grid.is_interior(node))
    throw std::invalid_argument("operator evaluated at a non-interior node");
}

struct Hessian {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

Hessian hessian_centered(const ScalarField& u, std::size_t node) {
  const Grid& g = u.grid();
  auto [i, j] = g.ij(node);
  const double hx = g.spacing(0);
  Hessian H;
  H.xx = (u[g.index(i + 1, j)] - 2.0 * u[node] + u[g.index(i - 1, j)]) / (hx * hx);
  if (g.dim() == 2) {
    const double hy = g.spacing(1);
    H.yy = (u[g.index(i, j + 1)] - 2.0 * u[node] + u[g.index(i, j - 1)]) / (hy * hy);
    H.xy = (u[g.index(i + 1, j + 1)] - u[g.index(i + 1, j - 1)] - u[g.index(i - 1, j + 1)] +
            u[g.index(i - 1, j - 1)]) /
           (4.0 * hx * hy);
  }
  return H;
}

double infinity_laplacian_from(Vec2 d, const Hessian& H) {
  return d.x * d.x * H.xx + 2.0 * d.x * d.y * H.xy + d.y * d.y * H.yy;
}

double variable_term_from(Vec2 d, Vec2 grad_ln_p) {
  const double s = norm(d);
  if (s == 0.0) return 0.0;
  return s * s * std::log(s) * dot(d, grad_ln_p);
}

}  // namespace

Vec2 gradient_centered(const ScalarField& u, std::size_t node) {
  const Grid& g = u.grid();
  require_interior(g, node);
  auto [i, j] = g.ij(node);
  Vec2 d{(u[g.index(i + 1, j)] - u[g.index(i - 1, j)]) / (2.0 * g.spacing(0)), 0.0};
  if (g.dim() == 2) d.y = (u[g.index(i, j + 1)] - u[g.index(i, j - 1)]) / (2.0 * g.spacing(1));
  return d;
}

double infinity_laplacian(const ScalarField& u, std::size_t node) {
  const Vec2 d = gradient_centered(u, node);
  return infinity_laplacian_from(d, hessian_centered(u, node));
}

double variable_term(const ScalarField& u, const ExponentField& p, std::size_t node) {
  if (!(p.grid() == u.grid())) throw std::invalid_argument("exponent field lives on a different grid");
  return variable_term_from(gradient_centered(u, node), p.grad_ln_p(node));
}

OperatorSample infinity_x_laplacian(const ScalarField& u, const ExponentField& p, std::size_t node) {
  if (!(p.grid() == u.grid())) throw std::invalid_argument("exponent field lives on a different grid");
  OperatorSample s;
  s.node = node;
  s.gradient = gradient_centered(u, node);
  s.grad_norm = norm(s.gradient);
  s.infinity_laplacian = infinity_laplacian_from(s.gradient, hessian_centered(u, node));
  s.variable_term = variable_term_from(s.gradient, p.grad_ln_p(node));
  s.total = s.infinity_laplacian + s.variable_term;
  return s;
}

double sup_residual(const ScalarField& u, const ExponentField& p) {
  double r = 0.0;
  for (std::size_t k : u.grid().interior_nodes()) r = std::max(r, std::abs(infinity_x_laplacian(u, p, k).total));
  return r;
}

}  // namespace xlap
