// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqsense/cli/experiments.hpp"
#include "seqsense/errors.hpp"
#include "seqsense/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"seqsense: sequential-measurement displacement sensing experiments"};
  app.set_version_flag("--version", seqsense::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  int workers = 1;
  std::uint64_t seed = 1;
  bool full_scale = false;

  const std::vector<std::string> experiments = {
      "qfi-sweep",     "scaling-map", "two-param-compare", "cfi-saturation",
      "crb-map",       "decoherence", "validate",          "sample"};
  for (const std::string& name : experiments) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config file (key = value with [sections])");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", workers, "worker thread count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "RNG seed (sample mode)");
    sub->add_flag("--full-scale", full_scale, "run figure-size grids instead of desk scale");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  seqsense::cli::RunOptions options;
  options.experiment = app.get_subcommands().front()->get_name();
  options.out_path = out_path;
  options.format = format;
  options.workers = workers;
  options.seed = seed;
  options.full_scale = full_scale;

  // Environment overrides: output path and worker count only.
  if (const char* env_out = std::getenv("SEQSENSE_OUT")) options.out_path = env_out;
  if (const char* env_workers = std::getenv("SEQSENSE_WORKERS")) {
    try {
      options.workers = std::max(1, std::stoi(env_workers));
    } catch (const std::exception&) {
      std::cerr << "config error: SEQSENSE_WORKERS is not an integer\n";
      return 2;
    }
  }

  try {
    if (!config_path.empty()) {
      options.config = seqsense::cli::Config::parse_file(config_path);
    }
  } catch (const seqsense::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  return seqsense::cli::run(options);
}
