// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fracnash::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + raw + "'");
  }
  if (used != s.size()) throw ConfigError(key + ": trailing characters in '" + raw + "'");
  return v;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "certify-nash", "rate-from-profile", "subordinate", "ultra-profile",
      "half-power-check", "jensen-check", "logsob-check", "torus-sweep",
      "ou-suite", "explore-bernstein", "selftest"};
  return names;
}

ExperimentConfig::ExperimentConfig(pt::ptree tree) : tree_(std::move(tree)) {
  command_ = trim(tree_.get<std::string>("experiment.command", ""));
  if (command_.empty()) throw ConfigError("[experiment] command is missing");
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command_) == names.end())
    throw ConfigError("unknown command '" + command_ + "'");
  if (auto s = tree_.get_optional<std::string>("experiment.seed")) {
    const std::string v = trim(*s);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
      throw ConfigError("[experiment] seed must be a non-negative integer, got '" + v + "'");
    seed_ = seed;
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

ExperimentConfig ExperimentConfig::from_string(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return ExperimentConfig(std::move(tree));
}

std::uint64_t ExperimentConfig::seed() const {
  if (!seed_) throw ConfigError("[experiment] seed is mandatory (or pass --seed)");
  return *seed_;
}

void ExperimentConfig::override_seed(std::uint64_t seed) { seed_ = seed; }

bool ExperimentConfig::has(const std::string& key) const {
  return static_cast<bool>(tree_.get_optional<std::string>(key));
}

std::string ExperimentConfig::text(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) throw ConfigError("missing key " + key);
  return trim(*v);
}

std::string ExperimentConfig::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double ExperimentConfig::number(const std::string& key) const {
  return parse_double(key, text(key));
}

double ExperimentConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ExperimentConfig::integer_or(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v != static_cast<double>(static_cast<long>(v)))
    throw ConfigError(key + ": expected an integer");
  return static_cast<long>(v);
}

bool ExperimentConfig::flag_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = text(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> ExperimentConfig::numbers_or(const std::string& key,
                                                 std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  std::string raw = text(key);
  std::replace(raw.begin(), raw.end(), ',', ' ');
  std::istringstream in(raw);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_double(key, tok));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

gallery::GeneratorSpec ExperimentConfig::generator() const {
  gallery::GeneratorSpec spec;
  try {
    spec.kind = gallery::parse_kind(text_or("generator.kind", "cycle"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[generator] ") + e.what());
  }
  spec.size = static_cast<int>(integer_or("generator.size", 16));
  spec.size_y = static_cast<int>(integer_or("generator.size_y", 0));
  spec.spacing = number_or("generator.spacing", 1.0);
  spec.lattice_measure = flag_or("generator.lattice_measure", false);
  if (spec.kind == gallery::GeneratorKind::diagonal)
    spec.eigenvalues = numbers_or("generator.eigenvalues", {});
  try {
    gallery::validate(spec);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[generator] ") + e.what());
  }
  return spec;
}

nash::DecayProfile ExperimentConfig::profile() const {
  const std::string family = text_or("profile.family", "power");
  try {
    if (family == "power")
      return nash::DecayProfile::power(number_or("profile.n", 1.0), number_or("profile.c", 1.0));
    if (family == "stretched")
      return nash::DecayProfile::stretched(number_or("profile.gamma", 1.0),
                                           number_or("profile.k", 1.0));
    if (family == "exponential")
      return nash::DecayProfile::exponential(number_or("profile.rate", 1.0));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[profile] ") + e.what());
  }
  if (family == "log")
    throw ConfigError("[profile] family 'log' defines a rate directly and has no decay profile");
  throw ConfigError("[profile] unknown family '" + family + "'");
}

nash::RateFunction ExperimentConfig::rate(const spectral::SpectralOperator& op) const {
  const std::string kind = text_or("rate.kind", "constant");
  try {
    if (kind == "constant") return nash::RateFunction::constant(number_or("rate.value", 1.0));
    if (kind == "power") return nash::RateFunction::power_law(number_or("rate.n", 1.0));
    if (kind == "log") return nash::RateFunction::log_power(1.0, 1.0);
    if (kind == "log_power")
      return nash::RateFunction::log_power(number_or("rate.c", 1.0), number_or("rate.p", 1.0));
    if (kind == "profile") {
      if (text_or("profile.family", "power") == "log")
        return nash::RateFunction::log_power(number_or("profile.c", 1.0),
                                             number_or("profile.p", 1.0));
      return nash::RateFunction::from_profile(profile());
    }
    if (kind == "gap") return nash::spectral_gap_rate(op);
    if (kind == "empirical") {
      const auto grid = numbers_or("rate.s_grid", {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0});
      const double scale = number_or("rate.scale", 1.0);
      auto b = nash::empirical_rate(op, grid);
      return scale == 1.0 ? b : b.scaled(scale);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[rate] ") + e.what());
  }
  throw ConfigError("[rate] unknown kind '" + kind + "'");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, child] : tree_) {
    for (const auto& [key, value] : child) {
      std::string v = trim(value.data());
      if (section == "experiment" && key == "seed" && seed_) v = std::to_string(*seed_);
      out.emplace_back(section + "." + key, v);
    }
  }
  if (seed_ && !tree_.get_optional<std::string>("experiment.seed"))
    out.emplace_back("experiment.seed", std::to_string(*seed_));
  return out;
}

}  // namespace fracnash::cli
