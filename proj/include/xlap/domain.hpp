#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xlap {

/// A point or vector in the plane. 1D grids leave y at zero.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

/**
 * Uniform tensor lattice on an interval (dim 1) or a rectangle (dim 2).
 *
 * Nodes are numbered x-fastest: k = i + n * j. The same node count n is
 * used on every axis, so spacing may differ per axis on non-square boxes.
 * Boundary nodes are those with i or j equal to 0 or n - 1.
 */
class Grid {
 public:
  static Grid interval(double lower, double upper, int n);
  static Grid rectangle(Vec2 lower, Vec2 upper, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  Vec2 lower() const { return lower_; }
  Vec2 upper() const { return upper_; }
  double spacing(int axis) const { return axis == 0 ? hx_ : hy_; }
  std::size_t size() const;

  std::size_t index(int i, int j = 0) const;
  std::pair<int, int> ij(std::size_t k) const;
  Vec2 coord(std::size_t k) const;

  bool is_boundary(std::size_t k) const;
  bool is_interior(std::size_t k) const { return !is_boundary(k); }
  std::vector<std::size_t> interior_nodes() const;
  /// Boundary nodes in increasing index order.
  std::vector<std::size_t> boundary_nodes() const;

  double diameter() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(int dim, Vec2 lower, Vec2 upper, int n);

  int dim_ = 1;
  Vec2 lower_;
  Vec2 upper_;
  int n_ = 0;
  double hx_ = 0.0;
  double hy_ = 0.0;
};

/// Real values on every node of a grid; all values finite.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);
  static ScalarField constant(const Grid& grid, double c);

  template <class F>
  static ScalarField from_function(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.coord(k));
    return ScalarField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;
  double sup_norm() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Sup-norm of a - b; both fields must live on the same grid.
double sup_difference(const ScalarField& a, const ScalarField& b);

/**
 * Dirichlet data given nodewise on the boundary, together with its
 * Lipschitz constant over boundary node pairs (computed exhaustively).
 */
class BoundaryData {
 public:
  /// `values` follows Grid::boundary_nodes() order.
  BoundaryData(const Grid& grid, std::vector<double> values);

  template <class F>
  static BoundaryData from_function(const Grid& grid, F&& f) {
    std::vector<double> v;
    for (std::size_t k : grid.boundary_nodes()) v.push_back(f(grid.coord(k)));
    return BoundaryData(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  /// Value at boundary node k; throws for interior nodes.
  double at(std::size_t k) const;
  double lipschitz() const { return lipschitz_; }
  double min() const;
  double max() const;
  double sup_norm() const;

  BoundaryData shifted(double c) const;
  BoundaryData scaled(double s) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<double> dense_;
  double lipschitz_ = 0.0;
};

/// max over boundary node pairs of |f(x) - f(y)| / |x - y|.
double lipschitz_constant(const BoundaryData& f, const Grid& grid);

/**
 * Variable exponent p(x) > 0 with its logarithmic gradient stored
 * nodewise. For analytic kinds the gradient is exact; tabulated fields
 * carry an explicit table.
 */
class ExponentField {
 public:
  enum class Kind { constant, exponential_linear, tabulated };

  ExponentField(Grid grid, Kind kind, std::vector<double> p, std::vector<Vec2> grad_ln_p);

  const Grid& grid() const { return grid_; }
  Kind kind() const { return kind_; }
  std::span<const double> p() const { return p_; }
  std::span<const Vec2> grad_ln_p() const { return grad_; }
  double p(std::size_t k) const { return p_[k]; }
  Vec2 grad_ln_p(std::size_t k) const { return grad_[k]; }

  double sup_norm_grad_ln_p() const;
  double min_p() const;
  double max_p() const;
  bool is_positive() const;

  /// Max deviation at interior nodes between the stored gradient and
  /// centered differences of ln p.
  double finite_difference_deviation() const;

 private:
  Grid grid_;
  Kind kind_;
  std::vector<double> p_;
  std::vector<Vec2> grad_;
};

ExponentField make_constant_exponent(const Grid& grid, double p0);
/// p(x) = p0 * exp(<delta, x>), so grad ln p = delta everywhere.
ExponentField make_exponential_exponent(const Grid& grid, double p0, Vec2 delta);
/// p(x) = p0 + <slope, x>, tabulated with grad ln p = slope / p(x).
ExponentField make_affine_exponent(const Grid& grid, double p0, Vec2 slope);
ExponentField make_tabulated_exponent(const Grid& grid, std::vector<double> p,
                                      std::vector<Vec2> grad_ln_p);

/// max over nodes of |grad ln p1 - grad ln p2|.
double sup_norm_grad_ln_p_difference(const ExponentField& p1, const ExponentField& p2);

std::string to_string(ExponentField::Kind kind);

}  // namespace xlap
