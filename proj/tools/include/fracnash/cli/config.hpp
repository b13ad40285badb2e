// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/errors.hpp"
#include "fracnash/nash_toolkit.hpp"
#include "fracnash/operator_gallery.hpp"

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fracnash::cli {

/// Malformed or incomplete experiment file.  Maps to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

const std::vector<std::string>& command_names();

/// One experiment read from an INI-style file:
///
///   [experiment]  command, seed
///   [generator]   kind, size, size_y, spacing, lattice_measure, eigenvalues
///   [profile]     family (power|stretched|exponential|log), n, gamma, k, c
///   [rate]        kind (constant|power|log|log_power|profile|gap|empirical), ...
///   [run]         command-specific knobs (alpha, t, samples, ...)
///   [output]      dir
///
/// Lists are comma or whitespace separated.
class ExperimentConfig {
 public:
  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_string(std::string_view text);

  const std::string& command() const noexcept { return command_; }
  /// Throws ConfigError when neither the file nor an override set it.
  std::uint64_t seed() const;
  void override_seed(std::uint64_t seed);

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer_or(const std::string& key, long fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers_or(const std::string& key, std::vector<double> fallback) const;

  gallery::GeneratorSpec generator() const;
  nash::DecayProfile profile() const;
  /// [rate] resolved against `op` for the kinds that need the spectrum.
  nash::RateFunction rate(const spectral::SpectralOperator& op) const;

  /// "section.key = value" pairs in file order, seed override applied.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  explicit ExperimentConfig(boost::property_tree::ptree tree);

  boost::property_tree::ptree tree_;
  std::string command_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace fracnash::cli
