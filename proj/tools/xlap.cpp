// Command-line driver for the xlap experiments.
//
//   xlap <subcommand> --config cfg.json [--out file] [--format csv|json] [--threads n]
//
// Every subcommand except `calibrate` runs the experiment named by the
// subcommand and writes a report; the config's "experiment" key must agree.
// `calibrate` fits the bound constants of the config's experiment and merges
// them into the JSON file given by --out.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "xlap/harness.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string constants;
  int threads = 0;
};

void add_common(CLI::App* cmd, Options& opt, bool calibrate) {
  cmd->add_option("--config", opt.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out, calibrate ? "constants file to create or update" : "output file (default stdout)")
      ->required(calibrate);
  if (!calibrate)
    cmd->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--constants", opt.constants, "constants file; overrides the config's constants_file");
  cmd->add_option("--threads", opt.threads, "OpenMP threads (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int run(const std::string& name, const Options& opt) {
  if (opt.threads > 0) omp_set_num_threads(opt.threads);
  const xlap::ExperimentConfig cfg = xlap::load_config(opt.config);

  if (name == "calibrate") {
    xlap::CalibratedConstants base;
    if (std::filesystem::exists(opt.out)) base = xlap::CalibratedConstants::load(opt.out);
    const auto fitted = xlap::calibrate(cfg, base);
    fitted.save(opt.out);
    std::cerr << "xlap: wrote constants for " << xlap::to_string(cfg.kind) << " to " << opt.out << '\n';
    return 0;
  }

  if (xlap::parse_experiment_kind(name) != cfg.kind)
    throw std::invalid_argument("subcommand '" + name + "' does not match config experiment '" +
                                xlap::to_string(cfg.kind) + "'");
  std::optional<xlap::CalibratedConstants> constants;
  if (!opt.constants.empty()) constants = xlap::CalibratedConstants::load(opt.constants);
  const xlap::Report report = xlap::run_experiment(cfg, constants);
  write_text(opt.out, opt.format == "json" ? xlap::to_json(report).dump(2) + "\n" : xlap::to_csv(report));
  std::cerr << "xlap: " << report.experiment << (report.passed ? " passed" : " FAILED") << '\n';
  return report.passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the variable-exponent infinity-Laplacian"};
  app.require_subcommand(1);
  Options opt;
  const char* names[] = {"solve",   "aux",      "oracle1d",        "stability-thm1", "stability-two-exp",
                         "doubling", "transform-check", "convergence", "calibrate"};
  for (const char* n : names) add_common(app.add_subcommand(n), opt, std::string(n) == "calibrate");
  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, opt);
  } catch (const std::exception& e) {
    std::cerr << "xlap: error: " << e.what() << '\n';
    return 1;
  }
}
