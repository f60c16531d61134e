#include "xlap/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlap {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(int dim, Vec2 lower, Vec2 upper, int n)
    : dim_(dim), lower_(lower), upper_(upper), n_(n) {
  if (n < 3) throw std::invalid_argument("grid needs at least 3 nodes per axis");
  if (!(upper.x > lower.x)) throw std::invalid_argument("grid upper corner must exceed lower corner");
  hx_ = (upper.x - lower.x) / (n - 1);
  if (dim == 2) {
    if (!(upper.y > lower.y)) throw std::invalid_argument("grid upper corner must exceed lower corner");
    hy_ = (upper.y - lower.y) / (n - 1);
  }
}

Grid Grid::interval(double lower, double upper, int n) { return Grid(1, {lower, 0.0}, {upper, 0.0}, n); }

Grid Grid::rectangle(Vec2 lower, Vec2 upper, int n) { return Grid(2, lower, upper, n); }

std::size_t Grid::size() const {
  const auto n = static_cast<std::size_t>(n_);
  return dim_ == 1 ? n : n * n;
}

std::size_t Grid::index(int i, int j) const {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * static_cast<std::size_t>(j);
}

std::pair<int, int> Grid::ij(std::size_t k) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(k % n), static_cast<int>(k / n)};
}

Vec2 Grid::coord(std::size_t k) const {
  auto [i, j] = ij(k);
  // Pin the far corner exactly instead of accumulating lower + (n-1) h.
  const double x = i == n_ - 1 ? upper_.x : lower_.x + i * hx_;
  if (dim_ == 1) return {x, 0.0};
  const double y = j == n_ - 1 ? upper_.y : lower_.y + j * hy_;
  return {x, y};
}

bool Grid::is_boundary(std::size_t k) const {
  auto [i, j] = ij(k);
  if (i == 0 || i == n_ - 1) return true;
  return dim_ == 2 && (j == 0 || j == n_ - 1);
}

std::vector<std::size_t> Grid::interior_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < size(); ++k)
    if (is_interior(k)) out.push_back(k);
  return out;
}

std::vector<std::size_t> Grid::boundary_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < size(); ++k)
    if (is_boundary(k)) out.push_back(k);
  return out;
}

double Grid::diameter() const { return norm(upper_ - lower_); }

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("field length does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
}

ScalarField ScalarField::constant(const Grid& grid, double c) {
  return ScalarField(grid, std::vector<double>(grid.size(), c));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double sup_difference(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// ---------------------------------------------------------------------------
// BoundaryData

BoundaryData::BoundaryData(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)), dense_(grid.size(), 0.0) {
  const auto nodes = grid_.boundary_nodes();
  if (values_.size() != nodes.size())
    throw std::invalid_argument("boundary data needs one value per boundary node (" +
                                std::to_string(nodes.size()) + ")");
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (!std::isfinite(values_[s])) throw std::invalid_argument("boundary values must be finite");
    dense_[nodes[s]] = values_[s];
  }
  lipschitz_ = lipschitz_constant(*this, grid_);
}

double BoundaryData::at(std::size_t k) const {
  if (!grid_.is_boundary(k)) throw std::out_of_range("node is not a boundary node");
  return dense_[k];
}

double BoundaryData::min() const { return *std::min_element(values_.begin(), values_.end()); }
double BoundaryData::max() const { return *std::max_element(values_.begin(), values_.end()); }

double BoundaryData::sup_norm() const { return std::max(std::abs(min()), std::abs(max())); }

BoundaryData BoundaryData::shifted(double c) const {
  auto v = values_;
  for (double& x : v) x += c;
  return BoundaryData(grid_, std::move(v));
}

BoundaryData BoundaryData::scaled(double s) const {
  auto v = values_;
  for (double& x : v) x *= s;
  return BoundaryData(grid_, std::move(v));
}

double lipschitz_constant(const BoundaryData& f, const Grid& grid) {
  if (!(f.grid() == grid)) throw std::invalid_argument("boundary data belongs to a different grid");
  const auto nodes = grid.boundary_nodes();
  const auto vals = f.values();
  double lip = 0.0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Vec2 xa = grid.coord(nodes[a]);
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const double d = norm(grid.coord(nodes[b]) - xa);
      lip = std::max(lip, std::abs(vals[a] - vals[b]) / d);
    }
  }
  return lip;
}

// ---------------------------------------------------------------------------
// ExponentField

ExponentField::ExponentField(Grid grid, Kind kind, std::vector<double> p, std::vector<Vec2> grad_ln_p)
    : grid_(std::move(grid)), kind_(kind), p_(std::move(p)), grad_(std::move(grad_ln_p)) {
  if (p_.size() != grid_.size() || grad_.size() != grid_.size())
    throw std::invalid_argument("exponent tables must have one entry per node");
  if (!is_positive()) throw std::invalid_argument("exponent p must be positive and finite at every node");
  for (Vec2 g : grad_)
    if (!std::isfinite(g.x) || !std::isfinite(g.y)) throw std::invalid_argument("grad ln p must be finite");
}

bool ExponentField::is_positive() const {
  return std::all_of(p_.begin(), p_.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
}

double ExponentField::sup_norm_grad_ln_p() const {
  double m = 0.0;
  for (Vec2 g : grad_) m = std::max(m, norm(g));
  return m;
}

double ExponentField::min_p() const { return *std::min_element(p_.begin(), p_.end()); }
double ExponentField::max_p() const { return *std::max_element(p_.begin(), p_.end()); }

double ExponentField::finite_difference_deviation() const {
  double dev = 0.0;
  for (std::size_t k : grid_.interior_nodes()) {
    auto [i, j] = grid_.ij(k);
    const double hx = grid_.spacing(0);
    Vec2 fd{(std::log(p_[grid_.index(i + 1, j)]) - std::log(p_[grid_.index(i - 1, j)])) / (2 * hx), 0.0};
    if (grid_.dim() == 2) {
      const double hy = grid_.spacing(1);
      fd.y = (std::log(p_[grid_.index(i, j + 1)]) - std::log(p_[grid_.index(i, j - 1)])) / (2 * hy);
    }
    dev = std::max(dev, norm(fd - grad_[k]));
  }
  return dev;
}

ExponentField make_constant_exponent(const Grid& grid, double p0) {
  if (!(p0 > 0.0)) throw std::invalid_argument("constant exponent p0 must be positive");
  return ExponentField(grid, ExponentField::Kind::constant, std::vector<double>(grid.size(), p0),
                       std::vector<Vec2>(grid.size(), Vec2{}));
}

ExponentField make_exponential_exponent(const Grid& grid, double p0, Vec2 delta) {
  if (!(p0 > 0.0)) throw std::invalid_argument("exponential exponent p0 must be positive");
  if (grid.dim() == 1) delta.y = 0.0;
  std::vector<double> p(grid.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = p0 * std::exp(dot(delta, grid.coord(k)));
  const auto kind = delta == Vec2{} ? ExponentField::Kind::constant : ExponentField::Kind::exponential_linear;
  return ExponentField(grid, kind, std::move(p), std::vector<Vec2>(grid.size(), delta));
}

ExponentField make_affine_exponent(const Grid& grid, double p0, Vec2 slope) {
  if (grid.dim() == 1) slope.y = 0.0;
  std::vector<double> p(grid.size());
  std::vector<Vec2> g(grid.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = p0 + dot(slope, grid.coord(k));
    if (!(p[k] > 0.0)) throw std::invalid_argument("affine exponent is not positive on the grid");
    g[k] = (1.0 / p[k]) * slope;
  }
  return ExponentField(grid, ExponentField::Kind::tabulated, std::move(p), std::move(g));
}

ExponentField make_tabulated_exponent(const Grid& grid, std::vector<double> p, std::vector<Vec2> grad_ln_p) {
  return ExponentField(grid, ExponentField::Kind::tabulated, std::move(p), std::move(grad_ln_p));
}

double sup_norm_grad_ln_p_difference(const ExponentField& p1, const ExponentField& p2) {
  if (!(p1.grid() == p2.grid())) throw std::invalid_argument("exponent fields live on different grids");
  double m = 0.0;
  for (std::size_t k = 0; k < p1.grid().size(); ++k) m = std::max(m, norm(p1.grad_ln_p(k) - p2.grad_ln_p(k)));
  return m;
}

std::string to_string(ExponentField::Kind kind) {
  switch (kind) {
    case ExponentField::Kind::constant: return "constant";
    case ExponentField::Kind::exponential_linear: return "exponential";
    case ExponentField::Kind::tabulated: return "tabulated";
  }
  return "unknown";
}

}  // namespace xlap
