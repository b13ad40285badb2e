// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fracnash::cli {

/// Shortest round-trip form is not required; every number is printed with
/// 17 significant digits so reruns compare byte-for-byte.
std::string format_number(double value);

class CsvTable {
 public:
  using Cell = std::variant<std::string, double, std::int64_t>;

  explicit CsvTable(std::vector<std::string> columns);

  /// Throws InvalidArgument when the width does not match the header.
  void add(std::vector<Cell> row);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Plain-text run record.  The timestamp line is the only field that
/// changes between identical runs.
struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> files;
  std::string status;
  std::string failure;
  double wall_seconds = 0.0;
  int jobs = 1;

  void write(const std::filesystem::path& path) const;
};

std::string_view library_version();

}  // namespace fracnash::cli
