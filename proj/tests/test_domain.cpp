#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "xlap/domain.hpp"

using namespace xlap;

TEST_SUITE("domain") {
  TEST_CASE("grid spacing, size and diameter") {
    const Grid g1 = Grid::interval(0.0, 2.0, 5);
    CHECK(g1.size() == 5);
    CHECK(g1.spacing(0) == doctest::Approx(0.5));
    CHECK(g1.diameter() == doctest::Approx(2.0));
    CHECK(g1.coord(4).x == 2.0);

    const Grid g2 = Grid::rectangle({0.0, 0.0}, {1.0, 2.0}, 9);
    CHECK(g2.size() == 81);
    CHECK(g2.spacing(0) == doctest::Approx(0.125));
    CHECK(g2.spacing(1) == doctest::Approx(0.25));
    CHECK(g2.diameter() == doctest::Approx(std::sqrt(5.0)));
    CHECK(g2.coord(80).x == 1.0);
    CHECK(g2.coord(80).y == 2.0);
  }

  TEST_CASE("interior and boundary partition the nodes") {
    for (const Grid& g : {Grid::interval(0.0, 1.0, 7), Grid::rectangle({-1.0, 0.0}, {1.0, 3.0}, 6)}) {
      std::set<std::size_t> seen;
      for (std::size_t k : g.interior_nodes()) CHECK(seen.insert(k).second);
      for (std::size_t k : g.boundary_nodes()) CHECK(seen.insert(k).second);
      CHECK(seen.size() == g.size());
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(g.is_boundary(k) != g.is_interior(k));
    }
    CHECK(Grid::rectangle({0, 0}, {1, 1}, 5).boundary_nodes().size() == 16);
    CHECK(Grid::interval(0, 1, 5).boundary_nodes().size() == 2);
  }

  TEST_CASE("refinement doubles n - 1 and keeps the diameter") {
    const Grid a = Grid::rectangle({0, 0}, {1, 1}, 17);
    const Grid b = Grid::rectangle({0, 0}, {1, 1}, 33);
    CHECK(b.n() - 1 == 2 * (a.n() - 1));
    CHECK(a.diameter() == b.diameter());
    CHECK(b.spacing(0) == doctest::Approx(a.spacing(0) / 2));
  }

  TEST_CASE("invalid grids and fields are rejected") {
    CHECK_THROWS_AS(Grid::interval(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Grid::interval(1.0, 1.0, 5), std::invalid_argument);
    const Grid g = Grid::interval(0.0, 1.0, 4);
    CHECK_THROWS_AS(ScalarField(g, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField(g, {1.0, NAN, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryData(g, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryData(g, {0.0, 1.0}).at(1), std::out_of_range);
  }

  TEST_CASE("lipschitz constant of boundary data") {
    const Grid g1 = Grid::interval(0.0, 1.0, 9);
    CHECK(BoundaryData::from_function(g1, [](Vec2) { return 3.0; }).lipschitz() == 0.0);
    CHECK(BoundaryData(g1, {0.0, 1.0}).lipschitz() == doctest::Approx(1.0));

    const Grid g2 = Grid::rectangle({0, 0}, {1, 1}, 33);
    const auto f = BoundaryData::from_function(g2, [](Vec2 x) { return x.x + 2.0 * x.y; });
    CHECK(std::abs(f.lipschitz() - std::sqrt(5.0)) <= 1e-6);
    CHECK(lipschitz_constant(f, g2) == f.lipschitz());
  }

  TEST_CASE("lipschitz inequality holds for every boundary pair") {
    test::Sampler rnd(11);
    const Grid g = Grid::rectangle({0, 0}, {2, 1}, 9);
    std::vector<double> v;
    for (std::size_t i = 0; i < g.boundary_nodes().size(); ++i) v.push_back(rnd(-1, 1));
    const BoundaryData f(g, v);
    const auto nodes = g.boundary_nodes();
    for (std::size_t a : nodes)
      for (std::size_t b : nodes)
        if (a != b) CHECK(std::abs(f.at(a) - f.at(b)) <= f.lipschitz() * norm(g.coord(a) - g.coord(b)) * (1 + 1e-14));
  }

  TEST_CASE("boundary data shift and scale") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 5);
    const auto f = BoundaryData::from_function(g, [](Vec2 x) { return x.x - x.y; });
    const auto s = f.shifted(2.0).scaled(3.0);
    CHECK(s.min() == doctest::Approx(3.0));
    CHECK(s.max() == doctest::Approx(9.0));
    CHECK(s.lipschitz() == doctest::Approx(3.0 * f.lipschitz()));
  }

  TEST_CASE("exponential exponent norms") {
    const Grid g = Grid::rectangle({0, 0}, {1, 1}, 17);
    const auto p0 = make_exponential_exponent(g, 2.0, {0.0, 0.0});
    CHECK(p0.sup_norm_grad_ln_p() == 0.0);
    CHECK(p0.min_p() == 2.0);
    CHECK(p0.max_p() == 2.0);

    const auto p = make_exponential_exponent(g, 2.0, {0.1, 0.0});
    CHECK(p.sup_norm_grad_ln_p() == doctest::Approx(0.1));
    CHECK(p.is_positive());
    const double h = g.spacing(0);
    CHECK(p.finite_difference_deviation() <= 10.0 * h * h);
  }

  TEST_CASE("exponential exponent on an interval ignores the second component") {
    const Grid g = Grid::interval(0.0, 1.0, 9);
    const auto p = make_exponential_exponent(g, 2.0, {1.0, 5.0});
    CHECK(p.sup_norm_grad_ln_p() == doctest::Approx(1.0));
    CHECK(p.p(8) == doctest::Approx(2.0 * std::exp(1.0)));
  }

  TEST_CASE("affine exponent stores grad ln p = slope / p") {
    const Grid g = Grid::interval(0.0, 1.0, 65);
    const auto p = make_affine_exponent(g, 2.0, {1.0, 0.0});
    CHECK(p.kind() == ExponentField::Kind::tabulated);
    CHECK(p.sup_norm_grad_ln_p() == doctest::Approx(0.5));
    CHECK(p.grad_ln_p(64).x == doctest::Approx(1.0 / 3.0));
    const double h = g.spacing(0);
    CHECK(p.finite_difference_deviation() <= 10.0 * h * h);
  }

  TEST_CASE("exponent validation") {
    const Grid g = Grid::interval(0.0, 1.0, 5);
    CHECK_THROWS_AS(make_constant_exponent(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_exponential_exponent(g, -1.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_affine_exponent(g, 1.0, {-2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_tabulated_exponent(g, {1, 1, 1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_tabulated_exponent(g, {1, 1, -1, 1, 1}, std::vector<Vec2>(5)), std::invalid_argument);
  }

  TEST_CASE("difference of logarithmic gradients") {
    const Grid g = Grid::interval(0.0, 1.0, 9);
    const auto a = make_constant_exponent(g, 2.0);
    const auto b = make_exponential_exponent(g, 3.0, {0.25, 0.0});
    CHECK(sup_norm_grad_ln_p_difference(a, b) == doctest::Approx(0.25));
    CHECK(sup_norm_grad_ln_p_difference(b, b) == 0.0);
    CHECK_THROWS_AS(sup_norm_grad_ln_p_difference(a, make_constant_exponent(Grid::interval(0, 1, 5), 2)),
                    std::invalid_argument);
  }
}
