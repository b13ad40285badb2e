// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/commands.hpp"
#include "fracnash/cli/config.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  CLI::App app{"fracnash: Nash-type inequalities for fractional powers of generators"};
  std::string config_path;
  std::string out_dir = "fracnash_out";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool strict = false;
  app.add_option("--config", config_path, "experiment file (INI)")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "overrides [experiment] seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", strict, "inconclusive torus cells fail the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto config = fracnash::cli::ExperimentConfig::from_file(config_path);
    if (seed) config.override_seed(*seed);
    fracnash::cli::RunOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;
    options.strict = strict;
    const auto outcome = fracnash::cli::run(config, options);
    if (outcome.exit_code == 2) {
      std::cerr << "config error: " << outcome.failure << "\n";
    } else if (outcome.exit_code != 0) {
      std::cerr << "FAILED: " << outcome.failure << "\n";
      if (!outcome.certificate.empty()) std::cerr << "certificate: " << outcome.certificate.string() << "\n";
    } else {
      std::cout << "ok: " << config.command() << " -> " << out_dir << "\n";
    }
    return outcome.exit_code;
  } catch (const fracnash::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
