#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xlap/domain.hpp"
#include "xlap/oracle1d.hpp"
#include "xlap/solvers.hpp"

namespace xlap {

enum class ExperimentKind {
  solve,
  aux,
  oracle1d,
  stability_thm1,
  stability_two_exp,
  doubling,
  transform_check,
  convergence,
};

ExperimentKind parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

struct GridSpec {
  int dim = 1;
  Vec2 lower{0.0, 0.0};
  Vec2 upper{1.0, 1.0};
  int n = 65;

  Grid build() const;
  Grid build_with_n(int nodes) const;
};

/// kind: "constant" (p0), "exponential" (p0 exp(<delta, x>)),
/// "affine" (p0 + <delta, x>), or "table" (explicit p and grad ln p).
struct ExponentSpec {
  std::string kind = "constant";
  double p0 = 2.0;
  Vec2 delta;
  std::vector<double> table_p;
  std::vector<Vec2> table_grad;

  /// `scale` multiplies delta; sweeps use it as the perturbation size.
  ExponentField build(const Grid& grid, double scale = 1.0) const;
  /// p along the x axis, for the 1D oracle. Not available for tables.
  ExponentFunction function_1d(double scale = 1.0) const;
};

/// kind "values": one value per boundary node in Grid::boundary_nodes()
/// order. kind "expression": a named function of (x, y):
///   affine   coeffs [c0, c1, c2]  -> c0 + c1 x + c2 y
///   saddle   coeffs [cx, cy, s]   -> s ((x - cx)^2 - (y - cy)^2)
///   aronsson coeffs [cx, cy]      -> |x - cx|^{4/3} - |y - cy|^{4/3}
///   zero
struct BoundarySpec {
  std::string kind = "expression";
  std::string id = "affine";
  std::vector<double> coeffs{0.0, 1.0, 0.0};
  std::vector<double> values;

  BoundaryData build(const Grid& grid) const;
};

struct TransformSpec {
  double A = 1.5;
  /// Unset means alpha = 1 / ||u+||_inf.
  std::optional<double> alpha;
};

/// Optional overrides for the bound constants.
struct BoundsSpec {
  std::optional<double> C;
  std::optional<double> a;
  std::optional<double> kappa;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::solve;
  GridSpec grid;
  std::optional<ExponentSpec> exponent;
  std::optional<ExponentSpec> exponent2;
  BoundarySpec boundary;
  SolveConfig solver;
  std::vector<double> sweep;
  std::string constants_file;
  std::uint64_t seed = 0;
  TransformSpec transform;
  BoundsSpec bounds;
  /// Directory of the config file; relative constants_file paths resolve here.
  std::string base_dir;
  /// The parsed document; the hash is taken over its canonical dump.
  nlohmann::json source;

  std::string hash() const;
  std::string resolved_constants_file() const;
};

/// Sweeps must be strictly decreasing for delta/epsilon sweeps and strictly
/// increasing for node counts (convergence) and penalties (doubling).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace xlap
