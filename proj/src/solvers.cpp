#include "xlap/solvers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace xlap {

namespace {

// Below this many interior nodes a parallel sweep costs more than it saves.
constexpr std::size_t kParallelThreshold = 2048;

struct Neighbor {
  long offset;
  double distance;
};

struct Stencil {
  std::array<Neighbor, 8> nb{};
  int count = 0;
};

Stencil make_stencil(const Grid& g) {
  Stencil s;
  const double hx = g.spacing(0);
  const long n = g.n();
  s.nb[s.count++] = {-1, hx};
  s.nb[s.count++] = {+1, hx};
  if (g.dim() == 2) {
    const double hy = g.spacing(1);
    const double hd = std::hypot(hx, hy);
    s.nb[s.count++] = {-n, hy};
    s.nb[s.count++] = {+n, hy};
    s.nb[s.count++] = {-1 - n, hd};
    s.nb[s.count++] = {+1 - n, hd};
    s.nb[s.count++] = {-1 + n, hd};
    s.nb[s.count++] = {+1 + n, hd};
  }
  return s;
}

struct SchemeContext {
  const Grid& grid;
  Stencil stencil;
  Scheme scheme;
  const ExponentField* p;
  double epsilon;
  double floor;
  double drift_scale;  // h^2 / 2

  SchemeContext(const Grid& g, Scheme s, const ExponentField* pf, double eps, double fl)
      : grid(g), stencil(make_stencil(g)), scheme(s), p(pf), epsilon(eps), floor(fl) {
    const double h2 = g.dim() == 1 ? g.spacing(0) * g.spacing(0) : g.spacing(0) * g.spacing(1);
    drift_scale = 0.5 * h2;
  }

  double update(std::span<const double> u, std::size_t node) const {
    const double* c = u.data() + node;
    double hi = c[stencil.nb[0].offset];
    double lo = hi;
    for (int m = 1; m < stencil.count; ++m) {
      const double v = c[stencil.nb[m].offset];
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    double base = 0.5 * (hi + lo);
    if (p != nullptr) base = drift(u, node, base);

    switch (scheme) {
      case Scheme::midpoint:
        return base;
      case Scheme::upper: {
        double cone = c[stencil.nb[0].offset] + epsilon * stencil.nb[0].distance;
        for (int m = 1; m < stencil.count; ++m)
          cone = std::min(cone, c[stencil.nb[m].offset] + epsilon * stencil.nb[m].distance);
        return std::max(base, cone);
      }
      case Scheme::lower: {
        double cone = c[stencil.nb[0].offset] - epsilon * stencil.nb[0].distance;
        for (int m = 1; m < stencil.count; ++m)
          cone = std::max(cone, c[stencil.nb[m].offset] - epsilon * stencil.nb[m].distance);
        return std::min(base, cone);
      }
    }
    return base;
  }

  // Solves mid + (h^2/2) sum_k b_k D_k u = u for the centre value, with
  // b = ln|grad u| grad ln p frozen at the current iterate. D_k is upwind on
  // the sign of b_k, so the result is a convex combination of `mid` and the
  // upwind neighbours. An explicit drift would give the centre a negative
  // weight and the Jacobi sweep would amplify odd-even modes on fine grids.
  double drift(std::span<const double> u, std::size_t node, double mid) const {
    const Vec2 gl = p->grad_ln_p(node);
    if (gl.x == 0.0 && gl.y == 0.0) return mid;
    const double* c = u.data() + node;
    const long n = grid.n();
    const double hx = grid.spacing(0);
    Vec2 centered{(c[1] - c[-1]) / (2.0 * hx), 0.0};
    if (grid.dim() == 2) centered.y = (c[n] - c[-n]) / (2.0 * grid.spacing(1));
    const double log_grad = std::log(std::max(norm(centered), floor));

    const double bx = log_grad * gl.x;
    double wx = drift_scale * std::abs(bx) / hx;
    double num = mid + wx * (bx > 0.0 ? c[1] : c[-1]);
    double den = 1.0 + wx;
    if (grid.dim() == 2) {
      const double by = log_grad * gl.y;
      const double wy = drift_scale * std::abs(by) / grid.spacing(1);
      num += wy * (by > 0.0 ? c[n] : c[-n]);
      den += wy;
    }
    return num / den;
  }
};

struct Lane {
  SchemeContext ctx;
  std::vector<double> cur;
  std::vector<double> next;
  double last_update = 0.0;
};

std::vector<SolveResult> run_lockstep(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg,
                                      std::span<const Scheme> schemes, const ExponentField* p) {
  cfg.validate();
  if (!(f.grid() == grid)) throw std::invalid_argument("boundary data belongs to a different grid");
  if (p != nullptr && !(p->grid() == grid)) throw std::invalid_argument("exponent field lives on a different grid");

  const double tol = cfg.resolved_tolerance(f);
  const double floor = cfg.resolved_gradient_floor(grid);
  const double omega = cfg.relaxation;
  const auto interior = grid.interior_nodes();
  const auto n_int = static_cast<long>(interior.size());
  const bool parallel = interior.size() >= kParallelThreshold;

  const auto init = initial_guess(grid, f);
  std::vector<Lane> lanes;
  lanes.reserve(schemes.size());
  for (Scheme s : schemes) lanes.push_back(Lane{SchemeContext(grid, s, p, cfg.epsilon, floor), init, init});

  long iter = 0;
  bool all_converged = interior.empty();
  while (!all_converged && iter < cfg.max_iterations) {
    ++iter;
    all_converged = true;
    for (Lane& lane : lanes) {
      const std::span<const double> cur(lane.cur);
      double* next = lane.next.data();
      double du = 0.0;
#pragma omp parallel for schedule(static) reduction(max : du) if (parallel)
      for (long idx = 0; idx < n_int; ++idx) {
        const std::size_t k = interior[static_cast<std::size_t>(idx)];
        double v = lane.ctx.update(cur, k);
        if (omega != 1.0) v = (1.0 - omega) * cur[k] + omega * v;
        next[k] = v;
        du = std::max(du, std::abs(v - cur[k]));
      }
      lane.cur.swap(lane.next);
      lane.last_update = du;
      if (!(du < tol)) all_converged = false;
    }
  }

  std::vector<SolveResult> out;
  out.reserve(lanes.size());
  for (Lane& lane : lanes) {
    const std::span<const double> cur(lane.cur);
    const double scale = 1.0 / lane.ctx.drift_scale;
    double res = 0.0;
    for (std::size_t k : interior) res = std::max(res, std::abs(lane.ctx.update(cur, k) - cur[k]) * scale);
    const bool ok = lane.last_update < tol;
    out.push_back(SolveResult{ScalarField(grid, std::move(lane.cur)), iter, lane.last_update, res, ok});
  }
  return out;
}

SolveResult run_single(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg, Scheme s,
                       const ExponentField* p) {
  const std::array<Scheme, 1> schemes{s};
  return std::move(run_lockstep(grid, f, cfg, schemes, p).front());
}

SandwichResult run_sandwich(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg,
                            const ExponentField* p) {
  const std::array<Scheme, 3> schemes{Scheme::lower, Scheme::midpoint, Scheme::upper};
  auto r = run_lockstep(grid, f, cfg, schemes, p);
  SandwichResult s{std::move(r[0]), std::move(r[1]), std::move(r[2])};
  double viol = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    viol = std::max(viol, s.lower.field[k] - s.middle.field[k]);
    viol = std::max(viol, s.middle.field[k] - s.upper.field[k]);
  }
  s.ordering_violation = viol;
  s.gap = sup_difference(s.upper.field, s.lower.field);
  return s;
}

}  // namespace

void SolveConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be nonnegative");
  if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
  if (gradient_floor && !(*gradient_floor > 0.0)) throw std::invalid_argument("gradient_floor must be positive");
  if (!(relaxation > 0.0 && relaxation <= 1.0)) throw std::invalid_argument("relaxation must lie in (0, 1]");
}

double SolveConfig::resolved_tolerance(const BoundaryData& f) const {
  return tolerance ? *tolerance : 1e-9 * (f.max() - f.min() + 1.0);
}

double SolveConfig::resolved_gradient_floor(const Grid& grid) const {
  return gradient_floor ? *gradient_floor : grid.spacing(0);
}

double scheme_update(const Grid& grid, std::span<const double> u, std::size_t node, Scheme scheme,
                     const ExponentField* p, double epsilon, double gradient_floor) {
  if (u.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
  if (node >= grid.size() || !grid.is_interior(node)) throw std::invalid_argument("update at a non-interior node");
  return SchemeContext(grid, scheme, p, epsilon, gradient_floor).update(u, node);
}

std::vector<double> initial_guess(const Grid& grid, const BoundaryData& f) {
  if (!(f.grid() == grid)) throw std::invalid_argument("boundary data belongs to a different grid");
  std::vector<double> u(grid.size());
  const int n = grid.n();
  const double lo = f.min();
  const double hi = f.max();
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (grid.is_boundary(k)) {
      u[k] = f.at(k);
      continue;
    }
    auto [i, j] = grid.ij(k);
    const double s = static_cast<double>(i) / (n - 1);
    double v;
    if (grid.dim() == 1) {
      v = (1.0 - s) * f.at(grid.index(0)) + s * f.at(grid.index(n - 1));
    } else {
      const double t = static_cast<double>(j) / (n - 1);
      const double left = f.at(grid.index(0, j));
      const double right = f.at(grid.index(n - 1, j));
      const double bottom = f.at(grid.index(i, 0));
      const double top = f.at(grid.index(i, n - 1));
      const double c00 = f.at(grid.index(0, 0));
      const double c10 = f.at(grid.index(n - 1, 0));
      const double c01 = f.at(grid.index(0, n - 1));
      const double c11 = f.at(grid.index(n - 1, n - 1));
      v = (1 - s) * left + s * right + (1 - t) * bottom + t * top -
          ((1 - s) * (1 - t) * c00 + s * (1 - t) * c10 + (1 - s) * t * c01 + s * t * c11);
    }
    u[k] = std::clamp(v, lo, hi);
  }
  return u;
}

SolveResult solve_infinity_harmonic(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::midpoint, nullptr);
}

SolveResult solve_infinity_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                             const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::midpoint, &p);
}

SolveResult solve_upper(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::upper, nullptr);
}

SolveResult solve_lower(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::lower, nullptr);
}

SolveResult solve_upper_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                          const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::upper, &p);
}

SolveResult solve_lower_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                          const SolveConfig& cfg) {
  return run_single(grid, f, cfg, Scheme::lower, &p);
}

SandwichResult solve_sandwich(const Grid& grid, const BoundaryData& f, const SolveConfig& cfg) {
  return run_sandwich(grid, f, cfg, nullptr);
}

SandwichResult solve_sandwich_x(const Grid& grid, const BoundaryData& f, const ExponentField& p,
                                const SolveConfig& cfg) {
  return run_sandwich(grid, f, cfg, &p);
}

}  // namespace xlap
