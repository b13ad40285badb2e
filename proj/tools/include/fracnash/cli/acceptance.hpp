// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fracnash::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  ///< measured values; no timings, so it is reproducible
  std::vector<std::string> files;
};

struct AcceptanceOptions {
  std::filesystem::path out_dir = "acceptance_out";
  std::uint64_t seed = 20260101;
  int jobs = 1;
  std::vector<int> only;  ///< empty runs every criterion
};

constexpr int kCriterionCount = 13;

std::string criterion_title(int id);

/// Runs one criterion and writes its CSV table(s) under `out_dir`.  Errors
/// thrown by the library are reported as failures, not propagated.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Criteria 1-12 in parallel slots, then 13, which reruns 1-12 into
/// out_dir/rerun and compares every CSV byte-for-byte.  Also writes
/// acceptance.csv with one row per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  3  rate-function closed forms  max_rel=1.2e-09"
std::string summary_line(const CriterionResult& result);

}  // namespace fracnash::cli
