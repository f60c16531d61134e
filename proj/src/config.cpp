#include "xlap/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace xlap {

using nlohmann::json;

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::solve, "solve"},
    {ExperimentKind::aux, "aux"},
    {ExperimentKind::oracle1d, "oracle1d"},
    {ExperimentKind::stability_thm1, "stability-thm1"},
    {ExperimentKind::stability_two_exp, "stability-two-exp"},
    {ExperimentKind::doubling, "doubling"},
    {ExperimentKind::transform_check, "transform-check"},
    {ExperimentKind::convergence, "convergence"},
};

Vec2 parse_vec(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && (j.size() == 1 || j.size() == 2))
    return {j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0};
  throw std::invalid_argument(std::string(what) + " must be a number or an array of 1-2 numbers");
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  g.dim = j.value("dim", 1);
  if (g.dim != 1 && g.dim != 2) throw std::invalid_argument("grid.dim must be 1 or 2");
  if (j.contains("lower")) g.lower = parse_vec(j.at("lower"), "grid.lower");
  if (j.contains("upper")) g.upper = parse_vec(j.at("upper"), "grid.upper");
  g.n = j.value("n", 65);
  return g;
}

ExponentSpec parse_exponent(const json& j) {
  ExponentSpec e;
  e.kind = j.value("kind", std::string("constant"));
  e.p0 = j.value("p0", 2.0);
  if (j.contains("delta")) e.delta = parse_vec(j.at("delta"), "exponent.delta");
  if (e.kind == "table") {
    const json& t = j.at("table");
    e.table_p = t.at("p").get<std::vector<double>>();
    for (const json& g : t.at("grad")) e.table_grad.push_back(parse_vec(g, "exponent.table.grad"));
  } else if (e.kind != "constant" && e.kind != "exponential" && e.kind != "affine") {
    throw std::invalid_argument("unknown exponent kind '" + e.kind + "'");
  }
  return e;
}

BoundarySpec parse_boundary(const json& j) {
  BoundarySpec b;
  b.kind = j.value("kind", std::string("expression"));
  if (b.kind == "values") {
    b.values = j.at("values").get<std::vector<double>>();
  } else if (b.kind == "expression") {
    b.id = j.value("id", std::string("affine"));
    b.coeffs = j.value("coeffs", std::vector<double>{});
  } else {
    throw std::invalid_argument("unknown boundary kind '" + b.kind + "'");
  }
  return b;
}

SolveConfig parse_solver(const json& j) {
  SolveConfig c;
  c.epsilon = j.value("epsilon", 0.0);
  if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  if (j.contains("gradient_floor")) c.gradient_floor = j.at("gradient_floor").get<double>();
  c.relaxation = j.value("relaxation", 1.0);
  c.validate();
  return c;
}

void validate_sweep(ExperimentKind kind, const std::vector<double>& sweep) {
  const bool increasing = kind == ExperimentKind::convergence || kind == ExperimentKind::doubling;
  for (double v : sweep) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("sweep values must be finite and nonnegative");
    if (increasing && v == 0.0) throw std::invalid_argument("sweep values must be positive for this experiment");
  }
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (increasing ? !(sweep[i] > sweep[i - 1]) : !(sweep[i] < sweep[i - 1]))
      throw std::invalid_argument(std::string("sweep values must be strictly ") +
                                  (increasing ? "increasing" : "decreasing"));
  }
}

double coeff(const std::vector<double>& c, std::size_t i, double fallback) { return i < c.size() ? c[i] : fallback; }

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  for (const auto& k : kKinds)
    if (kind == k.kind) return k.name;
  return "unknown";
}

Grid GridSpec::build() const { return build_with_n(n); }

Grid GridSpec::build_with_n(int nodes) const {
  return dim == 1 ? Grid::interval(lower.x, upper.x, nodes) : Grid::rectangle(lower, upper, nodes);
}

ExponentField ExponentSpec::build(const Grid& grid, double scale) const {
  if (kind == "constant") return make_constant_exponent(grid, p0);
  if (kind == "exponential") return make_exponential_exponent(grid, p0, scale * delta);
  if (kind == "affine") return make_affine_exponent(grid, p0, scale * delta);
  if (table_p.size() != grid.size()) throw std::invalid_argument("exponent table does not match the grid");
  return make_tabulated_exponent(grid, table_p, table_grad);
}

ExponentFunction ExponentSpec::function_1d(double scale) const {
  const double p = p0;
  const double d = scale * delta.x;
  if (kind == "constant") return [p](double) { return p; };
  if (kind == "exponential") return [p, d](double x) { return p * std::exp(d * x); };
  if (kind == "affine") return [p, d](double x) { return p + d * x; };
  throw std::invalid_argument("the 1D oracle needs an analytic exponent (constant, exponential or affine)");
}

BoundaryData BoundarySpec::build(const Grid& grid) const {
  if (kind == "values") return BoundaryData(grid, values);
  const auto& c = coeffs;
  if (id == "zero") return BoundaryData::from_function(grid, [](Vec2) { return 0.0; });
  if (id == "affine") {
    const double c0 = coeff(c, 0, 0.0), c1 = coeff(c, 1, 1.0), c2 = coeff(c, 2, 0.0);
    return BoundaryData::from_function(grid, [=](Vec2 x) { return c0 + c1 * x.x + c2 * x.y; });
  }
  if (id == "saddle") {
    const double cx = coeff(c, 0, 0.0), cy = coeff(c, 1, 0.0), s = coeff(c, 2, 1.0);
    return BoundaryData::from_function(grid, [=](Vec2 x) {
      return s * ((x.x - cx) * (x.x - cx) - (x.y - cy) * (x.y - cy));
    });
  }
  if (id == "aronsson") {
    const double cx = coeff(c, 0, 0.0), cy = coeff(c, 1, 0.0);
    return BoundaryData::from_function(grid, [=](Vec2 x) {
      return std::pow(std::abs(x.x - cx), 4.0 / 3.0) - std::pow(std::abs(x.y - cy), 4.0 / 3.0);
    });
  }
  throw std::invalid_argument("unknown boundary expression id '" + id + "'");
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.source = doc;
  cfg.kind = parse_experiment_kind(doc.at("experiment").get<std::string>());
  if (doc.contains("grid")) cfg.grid = parse_grid(doc.at("grid"));
  if (doc.contains("exponent")) cfg.exponent = parse_exponent(doc.at("exponent"));
  if (doc.contains("exponent2")) cfg.exponent2 = parse_exponent(doc.at("exponent2"));
  if (doc.contains("boundary")) cfg.boundary = parse_boundary(doc.at("boundary"));
  if (doc.contains("solver")) cfg.solver = parse_solver(doc.at("solver"));
  if (doc.contains("sweep")) cfg.sweep = doc.at("sweep").get<std::vector<double>>();
  validate_sweep(cfg.kind, cfg.sweep);
  cfg.constants_file = doc.value("constants_file", std::string());
  cfg.seed = doc.value("seed", std::uint64_t{0});
  if (doc.contains("transform")) {
    const json& t = doc.at("transform");
    cfg.transform.A = t.value("A", cfg.transform.A);
    if (t.contains("alpha")) cfg.transform.alpha = t.at("alpha").get<double>();
  }
  if (doc.contains("bounds")) {
    const json& b = doc.at("bounds");
    if (b.contains("C")) cfg.bounds.C = b.at("C").get<double>();
    if (b.contains("a")) cfg.bounds.a = b.at("a").get<double>();
    if (b.contains("kappa")) cfg.bounds.kappa = b.at("kappa").get<double>();
  }
  if ((cfg.kind == ExperimentKind::stability_two_exp) && !(cfg.exponent && cfg.exponent2))
    throw std::invalid_argument("stability-two-exp needs both exponent and exponent2");
  if ((cfg.kind == ExperimentKind::stability_thm1 || cfg.kind == ExperimentKind::convergence ||
       cfg.kind == ExperimentKind::oracle1d) &&
      !cfg.exponent)
    throw std::invalid_argument(to_string(cfg.kind) + " needs an exponent");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  auto cfg = parse_config(json::parse(in));
  cfg.base_dir = std::filesystem::path(path).parent_path().string();
  return cfg;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(source.dump()); }

std::string ExperimentConfig::resolved_constants_file() const {
  if (constants_file.empty()) return {};
  const std::filesystem::path p(constants_file);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace xlap
