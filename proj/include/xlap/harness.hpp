#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xlap/config.hpp"
#include "xlap/estimates.hpp"

namespace xlap {

/// Tabular experiment output. CSV layout: header `config_hash,<columns>`,
/// one line per row, then `# key=value` summary lines. Floats use 17
/// significant digits.
struct Report {
  std::string experiment;
  std::string config_hash;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  bool passed = true;

  void add_summary(const std::string& key, double value);
  void add_summary(const std::string& key, const std::string& value);
};

std::string format_double(double v);
std::string to_csv(const Report& report);
nlohmann::json to_json(const Report& report);

/**
 * Bound constants fitted by `calibrate`. Each experiment family is
 * calibrated at the first value of its sweep and stored alongside that
 * value; rows at or above it are calibration rows and are not scored.
 */
struct CalibratedConstants {
  struct Thm1 {
    double C = 1.0;
    double a = 1.0;
    double scale = 1.0;
    double delta = 0.0;
  };
  struct TwoExp {
    double Const = 1.0;
    double kappa = 2.0;
    double delta = 0.0;
  };
  struct Sandwich {
    double B = 1.0;
    double kappa = 1.0;
  };
  std::optional<Thm1> thm1;
  std::optional<TwoExp> two_exp;
  std::optional<Sandwich> sandwich;

  nlohmann::json to_json() const;
  static CalibratedConstants from_json(const nlohmann::json& j);
  static CalibratedConstants load(const std::string& path);
  void save(const std::string& path) const;
};

struct StabilityRow {
  double delta = 0.0;
  /// ||grad ln p|| (single exponent) or ||grad ln p2 - grad ln p1|| (pair)
  double grad_norm = 0.0;
  double sup_difference = 0.0;
  double bound = 0.0;
  double epsilon = 0.0;
  long iterations = 0;
  bool converged = false;
  bool calibration_row = false;
  /// Exact 1D difference from the first-integral oracle; NaN when unavailable.
  double oracle_difference = 0.0;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  BoundParams params;
  double slope = 0.0;
  bool below_bound = true;
  bool nonincreasing = true;
  bool strictly_decreasing = true;
  /// max |measured - oracle| over rows with an oracle value.
  double oracle_deviation = 0.0;
  bool passed = false;
};

struct SandwichRow {
  double epsilon = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  double ordering_violation = 0.0;
  long iterations = 0;
  bool converged = false;
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  bool variable_exponent = false;
  bool ordered = true;
  bool within_bound = true;
  /// ||u+ - u-|| ~ B eps^kappa, least squares over rows with a positive gap.
  std::optional<double> fitted_B;
  std::optional<double> fitted_kappa;
  bool passed = false;
};

struct DoublingRow {
  DoublingResult probe;
  double distance = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct DoublingReport {
  std::vector<DoublingRow> rows;
  double epsilon = 0.0;
  double lipschitz = 0.0;
  double sigma = 0.0;
  double A = 1.0;
  double alpha = 1.0;
  bool M_dominates_sigma = true;
  bool M_nonincreasing = true;
  bool distance_nonincreasing = true;
  bool upper_bound_at_largest_j = false;
  bool passed = false;
};

struct TransformSample {
  double A = 1.0;
  double alpha = 1.0;
  double t = 0.0;
  double g = 0.0;
  double g1 = 1.0;
  double g2 = 0.0;
  double identity_relative = 0.0;
  bool inequalities_hold = true;
};

struct TransformReport {
  std::vector<TransformSample> samples;
  double max_identity_relative = 0.0;
  bool inequalities_hold = true;
  double identity_map_error = 0.0;
  double mu = 0.0;
  double max_infinity_laplacian = 0.0;
  bool strict_supersolution = false;
  bool passed = false;
};

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double error = 0.0;
  /// previous error / this error; NaN on the first row
  double ratio = 0.0;
  long iterations = 0;
  bool converged = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool passed = false;
};

/// Constants used when no calibrated file is given: C = 2 L (1 if L = 0),
/// a = diam, kappa = smallest exponent value, unit scale factors.
BoundParams default_bound_params(const ExperimentConfig& cfg);

StabilityReport run_stability_thm1(const ExperimentConfig& cfg, const CalibratedConstants& constants);
StabilityReport run_stability_two_exp(const ExperimentConfig& cfg, const CalibratedConstants& constants);
SandwichReport run_sandwich(const ExperimentConfig& cfg);
DoublingReport run_doubling(const ExperimentConfig& cfg);
TransformReport run_transform_check(const ExperimentConfig& cfg);
ConvergenceReport run_convergence(const ExperimentConfig& cfg);

/// Fits the constants of one experiment family (stability-thm1,
/// stability-two-exp or aux) and merges them into `base`.
CalibratedConstants calibrate(const ExperimentConfig& cfg, CalibratedConstants base = {});

/// Runs any experiment kind and renders it as a Report. Constants are read
/// from cfg.constants_file unless `constants` is given.
Report run_experiment(const ExperimentConfig& cfg, const std::optional<CalibratedConstants>& constants = {});

Report to_report(const StabilityReport& r, const ExperimentConfig& cfg);
Report to_report(const SandwichReport& r, const ExperimentConfig& cfg);
Report to_report(const DoublingReport& r, const ExperimentConfig& cfg);
Report to_report(const TransformReport& r, const ExperimentConfig& cfg);
Report to_report(const ConvergenceReport& r, const ExperimentConfig& cfg);

}  // namespace xlap
