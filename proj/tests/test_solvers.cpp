#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "xlap/oracle1d.hpp"
#include "xlap/solvers.hpp"

using namespace xlap;

namespace {

SolveConfig tight(double eps = 0.0) {
  SolveConfig c;
  c.epsilon = eps;
  c.tolerance = 1e-12;
  return c;
}

BoundaryData ends(const Grid& g, double fa, double fb) { return BoundaryData(g, {fa, fb}); }

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("linear data in 1D is reproduced on any grid") {
    for (int n : {3, 4, 17, 100}) {
      const Grid g = Grid::interval(0.0, 1.0, n);
      const auto r = solve_infinity_harmonic(g, ends(g, 0.0, 1.0), tight());
      CHECK(r.converged);
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(r.field[k] - g.coord(k).x) <= 1e-8);
    }
  }

  TEST_CASE("constant data gives a constant solution") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 9);
    const auto f = BoundaryData::from_function(g, [](Vec2) { return 0.75; });
    const auto r = solve_infinity_harmonic(g, f, tight());
    CHECK(r.field.min() == 0.75);
    CHECK(r.field.max() == 0.75);
    const auto rx = solve_infinity_x(g, f, make_exponential_exponent(g, 2.0, {1.0, 1.0}), tight());
    CHECK(rx.field.min() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(rx.field.max() == doctest::Approx(0.75).epsilon(1e-15));
  }

  TEST_CASE("linear data in 2D is a fixed point") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 33);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x; });
    const auto r = solve_infinity_harmonic(g, f, tight());
    CHECK(r.converged);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(r.field[k] - g.coord(k).x) <= 1e-6);
  }

  TEST_CASE("constant exponent reproduces the plain solver") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 17);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x * x.x - x.y; });
    SolveConfig c;
    const auto a = solve_infinity_harmonic(g, f, c);
    const auto b = solve_infinity_x(g, f, make_constant_exponent(g, 3.0), c);
    CHECK(sup_difference(a.field, b.field) <= 2.0 * c.resolved_tolerance(f));
  }

  TEST_CASE("variable exponent solve matches the exact 1D solution") {
    const Grid g = Grid::interval(0.0, 1.0, 257);
    const auto p = make_affine_exponent(g, 2.0, {1.0, 0.0});
    auto pf = [](double x) { return 2.0 + x; };
    for (double fb : {1.0, 0.5}) {
      const auto r = solve_infinity_x(g, ends(g, 0.0, fb), p, tight());
      const auto exact = solve_first_integral(pf, 0.0, 1.0, 0.0, fb, 257);
      CHECK(r.converged);
      CHECK(sup_difference(r.field, exact.field) <= 5e-3);
    }
  }

  TEST_CASE("equal endpoint data gives a constant for any exponent") {
    const Grid g = Grid::interval(0.0, 1.0, 33);
    const auto r = solve_infinity_x(g, ends(g, 0.3, 0.3), make_exponential_exponent(g, 2.0, {2.0, 0.0}), tight());
    CHECK(r.field.min() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.field.max() == doctest::Approx(0.3).epsilon(1e-15));
  }

  TEST_CASE("zero epsilon switches the auxiliary constraints off") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 17);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x * x.y; });
    const auto c = tight();
    const auto u = solve_infinity_harmonic(g, f, c);
    CHECK(sup_difference(solve_upper(g, f, c).field, u.field) == 0.0);
    CHECK(sup_difference(solve_lower(g, f, c).field, u.field) == 0.0);
    const auto p = make_exponential_exponent(g, 2.0, {0.5, 0.0});
    const auto ux = solve_infinity_x(g, f, p, c);
    CHECK(sup_difference(solve_upper_x(g, f, p, c).field, ux.field) == 0.0);
    CHECK(sup_difference(solve_lower_x(g, f, p, c).field, ux.field) == 0.0);
  }

  TEST_CASE("zero data with a gradient threshold gives two cones") {
    const Grid g = Grid::interval(0.0, 1.0, 65);
    const double h = g.spacing(0);
    const auto up = solve_upper(g, ends(g, 0.0, 0.0), tight(0.1));
    const auto lo = solve_lower(g, ends(g, 0.0, 0.0), tight(0.1));
    CHECK(up.converged);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double x = g.coord(k).x;
      CHECK(std::abs(up.field[k] - 0.1 * std::min(x, 1.0 - x)) <= 2.0 * h);
      CHECK(lo.field[k] == -up.field[k]);
    }
    const auto s = solve_sandwich(g, ends(g, 0.0, 0.0), tight(0.1));
    CHECK(std::abs(s.gap - 0.1) <= 2.0 * h);
  }

  TEST_CASE("steep data leaves the upper solution unchanged") {
    const Grid g = Grid::interval(0.0, 1.0, 33);
    for (double eps : {0.1, 0.5, 1.0}) {
      const auto up = solve_upper(g, ends(g, 0.0, 1.0), tight(eps));
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(up.field[k] - g.coord(k).x) <= 1e-9);
    }
  }

  TEST_CASE("constant exponent auxiliary solves equal the plain ones") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 17);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return std::sin(3.0 * x.x) * x.y; });
    const auto c = tight(0.2);
    const auto p = make_constant_exponent(g, 2.5);
    CHECK(sup_difference(solve_upper_x(g, f, p, c).field, solve_upper(g, f, c).field) == 0.0);
    CHECK(sup_difference(solve_lower_x(g, f, p, c).field, solve_lower(g, f, c).field) == 0.0);
  }

  TEST_CASE("non-convergence is flagged and the field is returned") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 17);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x * x.x; });
    SolveConfig c;
    c.max_iterations = 3;
    const auto r = solve_infinity_harmonic(g, f, c);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
    for (std::size_t k : g.boundary_nodes()) CHECK(r.field[k] == f.at(k));
  }

  TEST_CASE("converged results respect the tolerance and keep boundary values") {
    const Grid g = Grid::rectangle({0, 0}, {1, 2}, 17);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x * x.x - 0.5 * x.y; });
    SolveConfig c;
    const auto r = solve_infinity_x(g, f, make_exponential_exponent(g, 2.0, {0.2, 0.1}), c);
    CHECK(r.converged);
    CHECK(r.final_update < c.resolved_tolerance(f));
    for (std::size_t k : g.boundary_nodes()) CHECK(r.field[k] == f.at(k));
  }

  TEST_CASE("invalid solver inputs are rejected") {
    const Grid g = Grid::interval(0.0, 1.0, 9);
    const auto f = ends(g, 0.0, 1.0);
    SolveConfig c;
    c.tolerance = 0.0;
    CHECK_THROWS_AS(solve_infinity_harmonic(g, f, c), std::invalid_argument);
    c = SolveConfig{};
    c.gradient_floor = -1.0;
    CHECK_THROWS_AS(solve_infinity_harmonic(g, f, c), std::invalid_argument);
    c = SolveConfig{};
    c.epsilon = -0.1;
    CHECK_THROWS_AS(solve_upper(g, f, c), std::invalid_argument);
    const Grid other = Grid::interval(0.0, 1.0, 11);
    CHECK_THROWS_AS(solve_infinity_x(g, f, make_constant_exponent(other, 2.0), SolveConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve_infinity_harmonic(other, f, SolveConfig{}), std::invalid_argument);
  }

  TEST_CASE("initial guess interpolates and stays within the data range") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 9);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x * x.y; });
    const auto u0 = initial_guess(g, f);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(u0[k] >= f.min());
      CHECK(u0[k] <= f.max());
      if (g.is_boundary(k)) CHECK(u0[k] == f.at(k));
    }
    const Grid g1 = Grid::interval(0.0, 1.0, 5);
    const auto v0 = initial_guess(g1, ends(g1, 1.0, 3.0));
    CHECK(v0[2] == doctest::Approx(2.0));
  }
}
