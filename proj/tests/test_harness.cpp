#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdio>
#include <sstream>
#include <string>

#include "xlap/harness.hpp"

using namespace xlap;
using nlohmann::json;

namespace {

json thm1_doc() {
  return json::parse(R"({
    "experiment": "stability-thm1",
    "grid": {"dim": 1, "lower": 0, "upper": 1, "n": 65},
    "exponent": {"kind": "exponential", "p0": 2, "delta": 1},
    "boundary": {"kind": "expression", "id": "affine", "coeffs": [0, 0.5]},
    "solver": {"tolerance": 1e-12},
    "sweep": [0.4, 0.2, 0]
  })");
}

json two_exp_doc() {
  return json::parse(R"({
    "experiment": "stability-two-exp",
    "grid": {"dim": 1, "lower": 0, "upper": 1, "n": 65},
    "exponent": {"kind": "constant", "p0": 2},
    "exponent2": {"kind": "affine", "p0": 2, "delta": 1},
    "boundary": {"kind": "expression", "id": "affine", "coeffs": [0, 0.5]},
    "solver": {"tolerance": 1e-12},
    "sweep": [0.4, 0.2, 0]
  })");
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config parsing and validation") {
    const auto cfg = parse_config(thm1_doc());
    CHECK(cfg.kind == ExperimentKind::stability_thm1);
    CHECK(cfg.grid.n == 65);
    CHECK(cfg.exponent->kind == "exponential");
    CHECK(cfg.sweep.size() == 3);

    auto bad = thm1_doc();
    bad["sweep"] = {0.1, 0.2};
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    bad = thm1_doc();
    bad["sweep"] = {0.2, -0.1};
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    bad = thm1_doc();
    bad["experiment"] = "nope";
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    bad = thm1_doc();
    bad.erase("exponent");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    bad = two_exp_doc();
    bad.erase("exponent2");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    bad = thm1_doc();
    bad["exponent"]["kind"] = "cubic";
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);

    auto conv = json::parse(R"({"experiment": "convergence", "exponent": {"kind": "affine"}, "sweep": [65, 33]})");
    CHECK_THROWS_AS(parse_config(conv), std::invalid_argument);
  }

  TEST_CASE("config hash is stable and sensitive") {
    const auto a = parse_config(thm1_doc());
    const auto b = parse_config(thm1_doc());
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    auto doc = thm1_doc();
    doc["grid"]["n"] = 66;
    CHECK(parse_config(doc).hash() != a.hash());
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("report rendering") {
    Report r;
    r.experiment = "demo";
    r.config_hash = "0123456789abcdef";
    r.columns = {"x", "y"};
    r.rows = {{0.1, 2.0}, {1.0 / 3.0, NAN}};
    r.add_summary("k", 0.5);
    const std::string csv = to_csv(r);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "config_hash,x,y");
    std::getline(in, line);
    CHECK(line == "0123456789abcdef,0.10000000000000001,2");
    std::getline(in, line);
    CHECK(line == "0123456789abcdef,0.33333333333333331,nan");
    CHECK(csv.find("# k=0.5\n") != std::string::npos);

    const json j = to_json(r);
    CHECK(j["columns"].size() == 2);
    CHECK(j["rows"][1][1].is_null());
    CHECK(format_double(-INFINITY) == "-inf");
  }

  TEST_CASE("constants round trip") {
    CalibratedConstants c;
    c.thm1 = CalibratedConstants::Thm1{1.5, 2.0, 0.25, 0.4};
    c.sandwich = CalibratedConstants::Sandwich{3.0, 1.5};
    const auto d = CalibratedConstants::from_json(c.to_json());
    CHECK(d.thm1->scale == 0.25);
    CHECK(d.thm1->delta == 0.4);
    CHECK_FALSE(d.two_exp.has_value());
    CHECK(d.sandwich->kappa == 1.5);
  }

  TEST_CASE("zero perturbation rows") {
    const auto cfg = parse_config(thm1_doc());
    const auto rep = run_stability_thm1(cfg, {});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[2].delta == 0.0);
    CHECK(rep.rows[2].sup_difference <= 2e-12);
    CHECK(rep.rows[2].bound == 0.0);
    for (const auto& r : rep.rows) CHECK(std::abs(r.sup_difference - r.oracle_difference) <= 5e-3);

    const auto cfg2 = parse_config(two_exp_doc());
    const auto rep2 = run_stability_two_exp(cfg2, {});
    CHECK(rep2.rows[2].grad_norm == 0.0);
    CHECK(rep2.rows[2].sup_difference <= 2e-12);
  }

  TEST_CASE("two-exponent bound column is the bound formula") {
    const auto cfg = parse_config(two_exp_doc());
    CalibratedConstants c;
    c.two_exp = CalibratedConstants::TwoExp{0.7, 2.0, 0.4};
    const auto rep = run_stability_two_exp(cfg, c);
    for (const auto& r : rep.rows) {
      if (r.grad_norm == 0.0) continue;
      CHECK(r.bound == 0.7 / std::pow(std::abs(std::log(r.grad_norm)), 2.0));
      CHECK(std::abs(r.sup_difference - r.oracle_difference) <= 5e-3);
    }
    CHECK(rep.rows[0].calibration_row);
    CHECK_FALSE(rep.rows[1].calibration_row);
  }

  TEST_CASE("calibration pins the bound at the first sweep value") {
    const auto cfg = parse_config(thm1_doc());
    const auto c = calibrate(cfg);
    REQUIRE(c.thm1.has_value());
    CHECK(c.thm1->delta == 0.4);
    const auto rep = run_stability_thm1(cfg, c);
    CHECK(rep.rows[0].calibration_row);
    CHECK(rep.rows[0].bound == doctest::Approx(rep.rows[0].sup_difference).epsilon(1e-14));

    const auto c2 = calibrate(parse_config(two_exp_doc()), c);
    CHECK(c2.thm1.has_value());
    CHECK(c2.two_exp.has_value());
    CHECK(c2.two_exp->kappa == 2.0);
  }

  TEST_CASE("sandwich experiment") {
    auto doc = json::parse(R"({
      "experiment": "aux",
      "grid": {"dim": 1, "n": 65},
      "boundary": {"kind": "values", "values": [0, 0]},
      "solver": {"tolerance": 1e-12},
      "sweep": [0.1, 0]
    })");
    const auto rep = run_sandwich(parse_config(doc));
    REQUIRE(rep.rows.size() == 2);
    CHECK(std::abs(rep.rows[0].gap - 0.1) <= 2.0 / 64.0);
    CHECK(rep.rows[1].gap == 0.0);
    CHECK(rep.ordered);
    CHECK(rep.passed);
  }

  TEST_CASE("experiment dispatch renders every kind") {
    auto doc = json::parse(R"({
      "experiment": "solve",
      "grid": {"dim": 2, "n": 9},
      "boundary": {"kind": "expression", "id": "saddle", "coeffs": [0.5, 0.5, 1]}
    })");
    auto r = run_experiment(parse_config(doc));
    CHECK(r.rows.size() == 81);
    CHECK(r.columns.front() == "node");

    doc = json::parse(R"({
      "experiment": "oracle1d",
      "grid": {"dim": 1, "n": 65},
      "exponent": {"kind": "affine", "p0": 2, "delta": 1},
      "boundary": {"kind": "expression", "id": "affine", "coeffs": [0, 0.5]},
      "solver": {"tolerance": 1e-12}
    })");
    r = run_experiment(parse_config(doc));
    CHECK(r.rows.size() == 65);
    CHECK(r.passed);
  }
}
