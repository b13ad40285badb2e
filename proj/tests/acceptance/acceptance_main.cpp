// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the acceptance suite and prints one PASS/FAIL line per criterion.

#include "fracnash/cli/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"fracnash acceptance suite"};
  fracnash::cli::AcceptanceOptions opts;
  std::string out = "acceptance_out";
  app.add_option("--out", out, "directory for the criterion tables")->capture_default_str();
  app.add_option("--seed", opts.seed, "base seed")->capture_default_str();
  app.add_option("--jobs", opts.jobs, "criteria run concurrently")->check(CLI::PositiveNumber);
  app.add_option("--only", opts.only, "criterion ids to run");
  CLI11_PARSE(app, argc, argv);
  opts.out_dir = out;

  const auto results = fracnash::cli::run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << fracnash::cli::summary_line(r) << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
