// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/report.hpp"

#include "fracnash/errors.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef FRACNASH_VERSION
#define FRACNASH_VERSION "0.0.0"
#endif

namespace fracnash::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw InvalidArgument("csv row has " + std::to_string(row.size()) + " cells, header has " +
                          std::to_string(columns_.size()));
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (auto& c : row) {
    if (auto* s = std::get_if<std::string>(&c))
      cells.push_back(quote(*s));
    else if (auto* d = std::get_if<double>(&c))
      cells.push_back(format_number(*d));
    else
      cells.push_back(std::to_string(std::get<std::int64_t>(c)));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  std::vector<std::string> header;
  for (const auto& c : columns_) header.push_back(quote(c));
  line(header);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

std::string_view library_version() { return FRACNASH_VERSION; }

void Manifest::write(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "# fracnash run manifest\n";
  out << "command = " << command << "\n";
  out << "seed = " << seed << "\n";
  out << "status = " << status << "\n";
  if (!failure.empty()) out << "failure = " << failure << "\n";
  out << "jobs = " << jobs << "\n";
  out << "\n[versions]\n";
  out << "fracnash = " << library_version() << "\n";
  out << "eigen = " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
      << EIGEN_MINOR_VERSION << "\n";
  out << "boost = " << BOOST_VERSION / 100000 << "." << BOOST_VERSION / 100 % 1000 << "."
      << BOOST_VERSION % 100 << "\n";
#if defined(__clang__)
  out << "compiler = clang " << __clang_major__ << "." << __clang_minor__ << "\n";
#elif defined(__GNUC__)
  out << "compiler = gcc " << __GNUC__ << "." << __GNUC_MINOR__ << "\n";
#endif
  out << "\n[config]\n";
  for (const auto& [k, v] : config) out << k << " = " << v << "\n";
  out << "\n[files]\n";
  for (const auto& f : files) out << f << "\n";
  out << "\n[timing]\n";
  out << "wall_seconds = " << format_number(wall_seconds) << "\n";
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  out << "timestamp = " << stamp << "\n";
  write_text(path, out.str());
}

}  // namespace fracnash::cli
