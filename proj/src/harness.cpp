#include "xlap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "xlap/oracle1d.hpp"
#include "xlap/solvers.hpp"
#include "xlap/transform.hpp"

namespace xlap {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double b2d(bool b) { return b ? 1.0 : 0.0; }

std::string bool_str(bool b) { return b ? "true" : "false"; }

double max_spacing(const Grid& g) { return g.dim() == 1 ? g.spacing(0) : std::max(g.spacing(0), g.spacing(1)); }

// Endpoint data of a 1D problem, for the first-integral oracle.
struct Ends {
  double a, b, fa, fb;
};

Ends ends_1d(const Grid& grid, const BoundaryData& f) {
  const std::size_t last = grid.size() - 1;
  return {grid.lower().x, grid.upper().x, f.at(0), f.at(last)};
}

bool has_oracle(const ExperimentConfig& cfg, const ExponentSpec& e) { return cfg.grid.dim == 1 && e.kind != "table"; }

std::vector<double> sweep_or(const ExperimentConfig& cfg, double fallback) {
  return cfg.sweep.empty() ? std::vector<double>{fallback} : cfg.sweep;
}

ExponentField exponent_or_constant(const ExperimentConfig& cfg, const Grid& grid, double scale = 1.0) {
  return cfg.exponent ? cfg.exponent->build(grid, scale) : make_constant_exponent(grid, 2.0);
}

}  // namespace

// ---------------------------------------------------------------- reports

void Report::add_summary(const std::string& key, double value) { summary.emplace_back(key, format_double(value)); }

void Report::add_summary(const std::string& key, const std::string& value) { summary.emplace_back(key, value); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "config_hash";
  for (const auto& c : report.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : report.rows) {
    out << report.config_hash;
    for (double v : row) out << ',' << format_double(v);
    out << '\n';
  }
  out << "# experiment=" << report.experiment << '\n';
  for (const auto& [k, v] : report.summary) out << "# " << k << '=' << v << '\n';
  out << "# passed=" << bool_str(report.passed) << '\n';
  return out.str();
}

json to_json(const Report& report) {
  json j;
  j["experiment"] = report.experiment;
  j["config_hash"] = report.config_hash;
  j["columns"] = report.columns;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = json::array();
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  json s = json::object();
  for (const auto& [k, v] : report.summary) s[k] = v;
  j["summary"] = std::move(s);
  j["passed"] = report.passed;
  return j;
}

// -------------------------------------------------------------- constants

json CalibratedConstants::to_json() const {
  json j = json::object();
  if (thm1) j["stability-thm1"] = {{"C", thm1->C}, {"a", thm1->a}, {"scale", thm1->scale}, {"delta", thm1->delta}};
  if (two_exp)
    j["stability-two-exp"] = {{"Const", two_exp->Const}, {"kappa", two_exp->kappa}, {"delta", two_exp->delta}};
  if (sandwich) j["aux"] = {{"B", sandwich->B}, {"kappa", sandwich->kappa}};
  return j;
}

CalibratedConstants CalibratedConstants::from_json(const json& j) {
  CalibratedConstants c;
  if (j.contains("stability-thm1")) {
    const json& t = j.at("stability-thm1");
    c.thm1 = Thm1{t.at("C").get<double>(), t.at("a").get<double>(), t.at("scale").get<double>(),
                  t.at("delta").get<double>()};
  }
  if (j.contains("stability-two-exp")) {
    const json& t = j.at("stability-two-exp");
    c.two_exp = TwoExp{t.at("Const").get<double>(), t.at("kappa").get<double>(), t.at("delta").get<double>()};
  }
  if (j.contains("aux")) {
    const json& t = j.at("aux");
    c.sandwich = Sandwich{t.at("B").get<double>(), t.at("kappa").get<double>()};
  }
  return c;
}

CalibratedConstants CalibratedConstants::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file '" + path + "'");
  return from_json(json::parse(in));
}

void CalibratedConstants::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write constants file '" + path + "'");
  out << to_json().dump(2) << '\n';
}

// ------------------------------------------------------------ experiments

BoundParams default_bound_params(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  BoundParams prm;
  prm.f_sup = f.sup_norm();
  prm.f_lip = f.lipschitz();
  prm.C = cfg.bounds.C.value_or(prm.f_lip > 0.0 ? 2.0 * prm.f_lip : 1.0);
  prm.a = cfg.bounds.a.value_or(grid.diameter());
  if (cfg.bounds.kappa) {
    prm.kappa = *cfg.bounds.kappa;
  } else {
    const double scale = cfg.sweep.empty() ? 1.0 : cfg.sweep.front();
    double kappa = std::numeric_limits<double>::infinity();
    if (cfg.exponent) kappa = std::min(kappa, cfg.exponent->build(grid).min_p());
    if (cfg.exponent2) kappa = std::min(kappa, cfg.exponent2->build(grid, scale).min_p());
    prm.kappa = std::isfinite(kappa) ? kappa : 1.0;
  }
  return prm;
}

namespace {

void finish_stability(StabilityReport& rep) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (!r.calibration_row && !(r.sup_difference <= r.bound)) rep.below_bound = false;
    if (i > 0) {
      const double prev = rep.rows[i - 1].sup_difference;
      if (r.sup_difference > prev) rep.nonincreasing = false;
      if (!(r.sup_difference < prev)) rep.strictly_decreasing = false;
    }
    if (std::isfinite(r.oracle_difference))
      rep.oracle_deviation = std::max(rep.oracle_deviation, std::abs(r.sup_difference - r.oracle_difference));
    if (r.grad_norm > 0.0 && r.sup_difference > 0.0) {
      xs.push_back(r.grad_norm);
      ys.push_back(r.sup_difference);
    }
  }
  rep.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : kNaN;
  const bool converged = std::all_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.converged; });
  rep.passed = !rep.rows.empty() && rep.below_bound && rep.nonincreasing && converged;
}

}  // namespace

StabilityReport run_stability_thm1(const ExperimentConfig& cfg, const CalibratedConstants& constants) {
  if (!cfg.exponent) throw std::invalid_argument("stability-thm1 needs an exponent");
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  StabilityReport rep;
  rep.params = default_bound_params(cfg);
  if (constants.thm1) {
    rep.params.C = constants.thm1->C;
    rep.params.a = constants.thm1->a;
    rep.params.scale = constants.thm1->scale;
  }
  const auto v = solve_infinity_harmonic(grid, f, cfg.solver);
  const bool oracle = has_oracle(cfg, *cfg.exponent);

  for (double delta : sweep_or(cfg, 1.0)) {
    const ExponentField p = cfg.exponent->build(grid, delta);
    const auto u = solve_infinity_x(grid, f, p, cfg.solver);
    StabilityRow row;
    row.delta = delta;
    row.grad_norm = p.sup_norm_grad_ln_p();
    row.sup_difference = sup_difference(u.field, v.field);
    row.bound = theorem1_bound(row.grad_norm, rep.params);
    row.epsilon = row.grad_norm > 0.0 ? choose_epsilon_thm1(row.grad_norm, rep.params.a, rep.params.C).epsilon : 0.0;
    row.iterations = u.iterations;
    row.converged = u.converged && v.converged;
    row.calibration_row = constants.thm1.has_value() && delta >= constants.thm1->delta;
    row.oracle_difference = kNaN;
    if (oracle) {
      const Ends e = ends_1d(grid, f);
      row.oracle_difference = stability_1d_exact(cfg.exponent->function_1d(delta), cfg.exponent->function_1d(0.0),
                                                 e.a, e.b, e.fa, e.fb, grid.n());
    }
    rep.rows.push_back(row);
  }
  finish_stability(rep);
  return rep;
}

StabilityReport run_stability_two_exp(const ExperimentConfig& cfg, const CalibratedConstants& constants) {
  if (!cfg.exponent || !cfg.exponent2) throw std::invalid_argument("stability-two-exp needs exponent and exponent2");
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  StabilityReport rep;
  rep.params = default_bound_params(cfg);
  if (constants.two_exp) {
    rep.params.two_exp_const = constants.two_exp->Const;
    rep.params.kappa = constants.two_exp->kappa;
  }
  const ExponentField p1 = cfg.exponent->build(grid);
  const auto u1 = solve_infinity_x(grid, f, p1, cfg.solver);
  const bool oracle = has_oracle(cfg, *cfg.exponent) && has_oracle(cfg, *cfg.exponent2);

  for (double delta : sweep_or(cfg, 1.0)) {
    const ExponentField p2 = cfg.exponent2->build(grid, delta);
    const auto u2 = solve_infinity_x(grid, f, p2, cfg.solver);
    StabilityRow row;
    row.delta = delta;
    row.grad_norm = sup_norm_grad_ln_p_difference(p1, p2);
    row.sup_difference = sup_difference(u1.field, u2.field);
    if (row.grad_norm == 0.0)
      row.bound = 0.0;
    else if (row.grad_norm < 1.0)
      row.bound = theorem2_bound(row.grad_norm, rep.params);
    else
      row.bound = kNaN;
    row.epsilon = kNaN;
    if (row.grad_norm > 0.0 && row.grad_norm < 1.0) {
      try {
        row.epsilon =
            choose_epsilon_sec5(row.grad_norm, p2.sup_norm_grad_ln_p(), u2.field.sup_norm(), rep.params.kappa);
      } catch (const std::domain_error&) {
      }
    }
    row.iterations = u2.iterations;
    row.converged = u1.converged && u2.converged;
    row.calibration_row = constants.two_exp.has_value() && delta >= constants.two_exp->delta;
    row.oracle_difference = kNaN;
    if (oracle) {
      const Ends e = ends_1d(grid, f);
      row.oracle_difference = stability_1d_exact(cfg.exponent->function_1d(1.0), cfg.exponent2->function_1d(delta),
                                                 e.a, e.b, e.fa, e.fb, grid.n());
    }
    rep.rows.push_back(row);
  }
  finish_stability(rep);
  return rep;
}

SandwichReport run_sandwich(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  SandwichReport rep;
  rep.variable_exponent = cfg.exponent.has_value() && cfg.exponent->kind != "constant";
  const double h = max_spacing(grid);
  const double L = f.lipschitz();
  std::vector<double> xs, ys;
  bool converged = true;
  for (double eps : sweep_or(cfg, cfg.solver.epsilon)) {
    SolveConfig sc = cfg.solver;
    sc.epsilon = eps;
    const SandwichResult s =
        rep.variable_exponent ? solve_sandwich_x(grid, f, cfg.exponent->build(grid), sc) : solve_sandwich(grid, f, sc);
    SandwichRow row;
    row.epsilon = eps;
    row.gap = s.gap;
    row.bound = eps * grid.diameter() + 10.0 * h * (L + eps);
    row.ordering_violation = s.ordering_violation;
    row.iterations = std::max({s.lower.iterations, s.middle.iterations, s.upper.iterations});
    row.converged = s.converged();
    if (!s.ordered()) rep.ordered = false;
    if (!(row.gap <= row.bound)) rep.within_bound = false;
    converged = converged && row.converged;
    if (eps > 0.0 && row.gap > 0.0) {
      xs.push_back(eps);
      ys.push_back(row.gap);
    }
    rep.rows.push_back(row);
  }
  if (xs.size() >= 2) {
    const double kappa = loglog_slope(xs, ys);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += std::log(ys[i]) - kappa * std::log(xs[i]);
    rep.fitted_kappa = kappa;
    rep.fitted_B = std::exp(acc / static_cast<double>(xs.size()));
  }
  // The gap bound is only claimed for the constant-exponent schemes.
  rep.passed = !rep.rows.empty() && rep.ordered && converged && (rep.variable_exponent || rep.within_bound);
  return rep;
}

DoublingReport run_doubling(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid.build();
  const BoundaryData f0 = cfg.boundary.build(grid);
  const BoundaryData f = f0.min() < 0.0 ? f0.shifted(-f0.min()) : f0;
  DoublingReport rep;
  rep.epsilon = cfg.solver.epsilon;
  rep.lipschitz = f.lipschitz();
  if (!(rep.epsilon > 0.0)) throw std::invalid_argument("doubling needs solver.epsilon > 0");

  SolveConfig plain = cfg.solver;
  plain.epsilon = 0.0;
  const auto u1 = solve_infinity_x(grid, f, exponent_or_constant(cfg, grid), plain);
  const auto u2 = solve_upper(grid, f, cfg.solver);
  const double sup = u2.field.sup_norm();
  rep.A = cfg.transform.A;
  rep.alpha = cfg.transform.alpha.value_or(sup > 0.0 ? 1.0 / sup : 1.0);
  const ScalarField w2 = g_apply(u2.field, {rep.A, rep.alpha});

  for (double j : sweep_or(cfg, 1.0)) {
    DoublingRow row;
    row.probe = doubling_probe(u1.field, w2, j);
    row.distance = norm(row.probe.x - row.probe.y);
    row.lower_ok = rep.epsilon <= row.probe.j_distance;
    row.upper_ok = row.probe.j_distance <= 2.0 * (rep.lipschitz + rep.epsilon);
    rep.rows.push_back(row);
  }
  rep.sigma = rep.rows.empty() ? 0.0 : rep.rows.front().probe.sigma;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (!(r.probe.M >= r.probe.sigma)) rep.M_dominates_sigma = false;
    if (i > 0) {
      if (r.probe.M > rep.rows[i - 1].probe.M) rep.M_nonincreasing = false;
      if (r.distance > rep.rows[i - 1].distance) rep.distance_nonincreasing = false;
    }
  }
  rep.upper_bound_at_largest_j = !rep.rows.empty() && rep.rows.back().upper_ok;
  rep.passed = rep.sigma > 0.0 && rep.M_dominates_sigma && rep.M_nonincreasing && rep.distance_nonincreasing &&
               rep.upper_bound_at_largest_j && u1.converged && u2.converged;
  return rep;
}

TransformReport run_transform_check(const ExperimentConfig& cfg) {
  TransformReport rep;
  constexpr int kSamples = 41;
  constexpr double kTmax = 10.0;
  for (double A : {1.1, 2.0}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const TransformParams prm{A, alpha};
      for (int i = 0; i < kSamples; ++i) {
        const double t = kTmax * i / (kSamples - 1);
        TransformSample s;
        s.A = A;
        s.alpha = alpha;
        s.t = t;
        s.g = g_eval(t, prm);
        const auto d = g_derivatives(t, prm);
        s.g1 = d.first;
        s.g2 = d.second;
        const double lhs = d.second / d.first;
        const double rhs = -alpha * d.first_minus_one;
        s.identity_relative = rhs == 0.0 ? std::abs(lhs) : std::abs(lhs - rhs) / std::abs(rhs);
        if (t > 0.0) {
          const double gap = s.g - t;
          const double upper = std::log(A) / alpha;
          const double lower1 = d.first_minus_one;
          s.inequalities_hold = gap > 0.0 && gap < upper && upper <= (A - 1.0) / alpha &&
                                (A - 1.0) * std::exp(-alpha * t) / A < lower1 && lower1 <= A - 1.0;
        } else {
          s.inequalities_hold = s.g == 0.0 && d.first == A;
        }
        rep.max_identity_relative = std::max(rep.max_identity_relative, s.identity_relative);
        rep.inequalities_hold = rep.inequalities_hold && s.inequalities_hold;
        rep.samples.push_back(s);
      }
      for (int i = 0; i < kSamples; ++i) {
        const double t = kTmax * i / (kSamples - 1);
        rep.identity_map_error = std::max(rep.identity_map_error, std::abs(g_eval(t, {1.0, alpha}) - t));
      }
    }
  }

  const Grid grid = cfg.grid.build();
  const BoundaryData f0 = cfg.boundary.build(grid);
  const BoundaryData f = f0.min() < 0.0 ? f0.shifted(-f0.min()) : f0;
  if (!(cfg.solver.epsilon > 0.0)) throw std::invalid_argument("transform-check needs solver.epsilon > 0");
  const auto up = solve_upper(grid, f, cfg.solver);
  const double v_sup = up.field.sup_norm();
  const bool from_sup = !cfg.transform.alpha.has_value();
  const TransformParams prm{cfg.transform.A, cfg.transform.alpha.value_or(v_sup > 0.0 ? 1.0 / v_sup : 1.0)};
  rep.mu = mu_section4(prm, cfg.solver.epsilon, v_sup, from_sup);
  const auto chk = strict_supersolution_check(g_apply(up.field, prm), rep.mu, 0.5 * rep.mu);
  rep.max_infinity_laplacian = chk.max_value;
  rep.strict_supersolution = chk.passed && up.converged;
  rep.passed = rep.max_identity_relative <= 1e-9 && rep.inequalities_hold && rep.identity_map_error == 0.0 &&
               rep.strict_supersolution;
  return rep;
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
  if (cfg.grid.dim != 1 || !cfg.exponent || !has_oracle(cfg, *cfg.exponent))
    throw std::invalid_argument("convergence needs a 1D grid and an analytic exponent");
  ConvergenceReport rep;
  for (double nd : sweep_or(cfg, cfg.grid.n)) {
    const int n = static_cast<int>(nd);
    if (n != nd) throw std::invalid_argument("convergence sweep values must be integers");
    const Grid grid = cfg.grid.build_with_n(n);
    const BoundaryData f = cfg.boundary.build(grid);
    const auto u = solve_infinity_x(grid, f, cfg.exponent->build(grid), cfg.solver);
    const Ends e = ends_1d(grid, f);
    const auto exact = solve_first_integral(cfg.exponent->function_1d(1.0), e.a, e.b, e.fa, e.fb, n);
    ConvergenceRow row;
    row.n = n;
    row.h = grid.spacing(0);
    row.error = sup_difference(u.field, exact.field);
    row.ratio = rep.rows.empty() ? kNaN : rep.rows.back().error / row.error;
    row.iterations = u.iterations;
    row.converged = u.converged;
    rep.rows.push_back(row);
  }
  rep.passed = rep.rows.size() >= 2;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (!r.converged) rep.passed = false;
    if (i > 0 && !(r.ratio >= 1.5 && r.ratio <= 2.5)) rep.passed = false;
  }
  return rep;
}

CalibratedConstants calibrate(const ExperimentConfig& cfg, CalibratedConstants base) {
  if (cfg.sweep.empty()) throw std::invalid_argument("calibration needs a sweep");
  ExperimentConfig one = cfg;
  one.sweep = {cfg.sweep.front()};
  switch (cfg.kind) {
    case ExperimentKind::stability_thm1: {
      const auto rep = run_stability_thm1(one, {});
      const auto& r = rep.rows.front();
      if (!(r.bound > 0.0) || !(r.sup_difference > 0.0))
        throw std::runtime_error("calibration row has a zero bound or a zero difference");
      base.thm1 = CalibratedConstants::Thm1{rep.params.C, rep.params.a, r.sup_difference / r.bound, r.delta};
      break;
    }
    case ExperimentKind::stability_two_exp: {
      const auto rep = run_stability_two_exp(one, {});
      const auto& r = rep.rows.front();
      if (!(r.grad_norm > 0.0 && r.grad_norm < 1.0) || !(r.sup_difference > 0.0))
        throw std::runtime_error("calibration row needs 0 < ||grad ln p2 - grad ln p1|| < 1 and a nonzero difference");
      const double c = r.sup_difference * std::pow(std::abs(std::log(r.grad_norm)), rep.params.kappa);
      base.two_exp = CalibratedConstants::TwoExp{c, rep.params.kappa, r.delta};
      break;
    }
    case ExperimentKind::aux: {
      const auto rep = run_sandwich(cfg);
      if (!rep.fitted_B || !rep.fitted_kappa) throw std::runtime_error("sandwich fit needs two positive gaps");
      base.sandwich = CalibratedConstants::Sandwich{*rep.fitted_B, *rep.fitted_kappa};
      break;
    }
    default:
      throw std::invalid_argument("calibrate supports stability-thm1, stability-two-exp and aux configs");
  }
  return base;
}

// ------------------------------------------------------------ rendering

namespace {

Report base_report(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  Report r;
  r.experiment = to_string(cfg.kind);
  r.config_hash = cfg.hash();
  r.columns = std::move(columns);
  return r;
}

Report solve_report(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  const bool upper = cfg.solver.epsilon > 0.0;
  SolveResult res = [&] {
    if (cfg.exponent) {
      const ExponentField p = cfg.exponent->build(grid);
      return upper ? solve_upper_x(grid, f, p, cfg.solver) : solve_infinity_x(grid, f, p, cfg.solver);
    }
    return upper ? solve_upper(grid, f, cfg.solver) : solve_infinity_harmonic(grid, f, cfg.solver);
  }();
  Report r = base_report(cfg, {"node", "x", "y", "u"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec2 x = grid.coord(k);
    r.rows.push_back({static_cast<double>(k), x.x, x.y, res.field[k]});
  }
  r.add_summary("iterations", static_cast<double>(res.iterations));
  r.add_summary("final_update", res.final_update);
  r.add_summary("residual", res.residual);
  r.add_summary("converged", bool_str(res.converged));
  r.passed = res.converged;
  return r;
}

Report oracle_report(const ExperimentConfig& cfg) {
  if (cfg.grid.dim != 1 || !cfg.exponent || !has_oracle(cfg, *cfg.exponent))
    throw std::invalid_argument("oracle1d needs a 1D grid and an analytic exponent");
  const Grid grid = cfg.grid.build();
  const BoundaryData f = cfg.boundary.build(grid);
  const Ends e = ends_1d(grid, f);
  const auto exact = solve_first_integral(cfg.exponent->function_1d(1.0), e.a, e.b, e.fa, e.fb, grid.n());
  const auto num = solve_infinity_x(grid, f, cfg.exponent->build(grid), cfg.solver);
  Report r = base_report(cfg, {"x", "u_exact", "u_numeric", "abs_error"});
  for (std::size_t k = 0; k < grid.size(); ++k)
    r.rows.push_back({exact.nodes[k], exact.values[k], num.field[k], std::abs(exact.values[k] - num.field[k])});
  r.add_summary("C", exact.C);
  r.add_summary("sign", static_cast<double>(exact.sign));
  r.add_summary("quadrature_residual", exact.residual);
  r.add_summary("sup_error", sup_difference(exact.field, num.field));
  r.add_summary("iterations", static_cast<double>(num.iterations));
  r.passed = num.converged;
  return r;
}

}  // namespace

Report to_report(const StabilityReport& s, const ExperimentConfig& cfg) {
  Report r = base_report(cfg, {"delta", "grad_norm", "sup_difference", "bound", "epsilon", "iterations", "converged",
                               "calibration_row", "oracle_difference"});
  for (const auto& row : s.rows)
    r.rows.push_back({row.delta, row.grad_norm, row.sup_difference, row.bound, row.epsilon,
                      static_cast<double>(row.iterations), b2d(row.converged), b2d(row.calibration_row),
                      row.oracle_difference});
  r.add_summary("C", s.params.C);
  r.add_summary("a", s.params.a);
  r.add_summary("kappa", s.params.kappa);
  r.add_summary("scale", s.params.scale);
  r.add_summary("two_exp_const", s.params.two_exp_const);
  r.add_summary("slope", s.slope);
  r.add_summary("oracle_deviation", s.oracle_deviation);
  r.add_summary("below_bound", bool_str(s.below_bound));
  r.add_summary("nonincreasing", bool_str(s.nonincreasing));
  r.add_summary("strictly_decreasing", bool_str(s.strictly_decreasing));
  r.passed = s.passed;
  return r;
}

Report to_report(const SandwichReport& s, const ExperimentConfig& cfg) {
  Report r = base_report(cfg, {"epsilon", "gap", "bound", "ordering_violation", "iterations", "converged"});
  for (const auto& row : s.rows)
    r.rows.push_back({row.epsilon, row.gap, row.bound, row.ordering_violation, static_cast<double>(row.iterations),
                      b2d(row.converged)});
  r.add_summary("variable_exponent", bool_str(s.variable_exponent));
  r.add_summary("ordered", bool_str(s.ordered));
  r.add_summary("within_bound", bool_str(s.within_bound));
  r.add_summary("fitted_B", s.fitted_B.value_or(kNaN));
  r.add_summary("fitted_kappa", s.fitted_kappa.value_or(kNaN));
  r.passed = s.passed;
  return r;
}

Report to_report(const DoublingReport& s, const ExperimentConfig& cfg) {
  Report r = base_report(cfg, {"j", "M", "x_index", "y_index", "x0", "x1", "y0", "y1", "distance", "j_distance",
                               "sigma", "lower_ok", "upper_ok"});
  for (const auto& row : s.rows) {
    const auto& p = row.probe;
    r.rows.push_back({p.j, p.M, static_cast<double>(p.x_index), static_cast<double>(p.y_index), p.x.x, p.x.y, p.y.x,
                      p.y.y, row.distance, p.j_distance, p.sigma, b2d(row.lower_ok), b2d(row.upper_ok)});
  }
  r.add_summary("epsilon", s.epsilon);
  r.add_summary("lipschitz", s.lipschitz);
  r.add_summary("sigma", s.sigma);
  r.add_summary("A", s.A);
  r.add_summary("alpha", s.alpha);
  r.add_summary("M_dominates_sigma", bool_str(s.M_dominates_sigma));
  r.add_summary("M_nonincreasing", bool_str(s.M_nonincreasing));
  r.add_summary("distance_nonincreasing", bool_str(s.distance_nonincreasing));
  r.add_summary("upper_bound_at_largest_j", bool_str(s.upper_bound_at_largest_j));
  r.passed = s.passed;
  return r;
}

Report to_report(const TransformReport& s, const ExperimentConfig& cfg) {
  Report r = base_report(cfg, {"A", "alpha", "t", "g", "g1", "g2", "identity_relative", "inequalities_hold"});
  for (const auto& x : s.samples)
    r.rows.push_back({x.A, x.alpha, x.t, x.g, x.g1, x.g2, x.identity_relative, b2d(x.inequalities_hold)});
  r.add_summary("max_identity_relative", s.max_identity_relative);
  r.add_summary("inequalities_hold", bool_str(s.inequalities_hold));
  r.add_summary("identity_map_error", s.identity_map_error);
  r.add_summary("mu", s.mu);
  r.add_summary("max_infinity_laplacian", s.max_infinity_laplacian);
  r.add_summary("strict_supersolution", bool_str(s.strict_supersolution));
  r.passed = s.passed;
  return r;
}

Report to_report(const ConvergenceReport& s, const ExperimentConfig& cfg) {
  Report r = base_report(cfg, {"n", "h", "error", "ratio", "iterations", "converged"});
  for (const auto& row : s.rows)
    r.rows.push_back({static_cast<double>(row.n), row.h, row.error, row.ratio, static_cast<double>(row.iterations),
                      b2d(row.converged)});
  r.passed = s.passed;
  return r;
}

Report run_experiment(const ExperimentConfig& cfg, const std::optional<CalibratedConstants>& constants) {
  auto consts = [&] {
    if (constants) return *constants;
    const std::string path = cfg.resolved_constants_file();
    return path.empty() ? CalibratedConstants{} : CalibratedConstants::load(path);
  };
  switch (cfg.kind) {
    case ExperimentKind::solve:
      return solve_report(cfg);
    case ExperimentKind::oracle1d:
      return oracle_report(cfg);
    case ExperimentKind::aux:
      return to_report(run_sandwich(cfg), cfg);
    case ExperimentKind::stability_thm1:
      return to_report(run_stability_thm1(cfg, consts()), cfg);
    case ExperimentKind::stability_two_exp:
      return to_report(run_stability_two_exp(cfg, consts()), cfg);
    case ExperimentKind::doubling:
      return to_report(run_doubling(cfg), cfg);
    case ExperimentKind::transform_check:
      return to_report(run_transform_check(cfg), cfg);
    case ExperimentKind::convergence:
      return to_report(run_convergence(cfg), cfg);
  }
  throw std::logic_error("unhandled experiment kind");
}

}  // namespace xlap
