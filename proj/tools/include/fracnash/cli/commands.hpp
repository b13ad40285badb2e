// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/cli/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fracnash::cli {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 1;
  bool strict = false;  ///< inconclusive torus cells count as failures
};

struct RunOutcome {
  int exit_code = 0;  ///< 0 pass, 1 assertion failure, 2 config error
  std::string failure;
  std::filesystem::path certificate;  ///< file holding the failing evidence
  std::vector<std::string> files;
};

/// Dispatches on config.command(), writes CSVs and manifest.txt under
/// options.out_dir.  ConfigError becomes exit code 2; every other library
/// error is a failed run with exit code 1.
RunOutcome run(const ExperimentConfig& config, const RunOptions& options);

}  // namespace fracnash::cli
