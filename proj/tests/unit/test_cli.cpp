// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/cli/acceptance.hpp"
#include "fracnash/cli/commands.hpp"
#include "fracnash/cli/config.hpp"
#include "fracnash/cli/parallel.hpp"
#include "fracnash/cli/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>

using namespace fracnash::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Column `name` of the first data row whose first cell starts with `key`.
std::vector<std::string> csv_column(const fs::path& p, const std::string& name) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto col = std::find(header.begin(), header.end(), name) - header.begin();
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (long i = 0; std::getline(ss, cell, ','); ++i)
      if (i == col) out.push_back(cell);
  }
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path("cli_test_out") / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("numbers are printed with 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("csv quoting and width checks") {
  CsvTable t({"a", "b"});
  t.add({std::string("x,y"), 2.5});
  t.add({std::string("plain"), std::int64_t{3}});
  CHECK(t.str() == "a,b\n\"x,y\",2.5\nplain,3\n");
  CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("config parsing") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = certify-nash\nseed = 42\n[generator]\nkind = path\nsize = 5\n"
      "[run]\nalpha = 0.5, 1\n");
  CHECK(cfg.command() == "certify-nash");
  CHECK(cfg.seed() == 42);
  CHECK(cfg.generator().kind == fracnash::gallery::GeneratorKind::path);
  CHECK(cfg.numbers_or("run.alpha", {}) == std::vector<double>{0.5, 1.0});
  CHECK(cfg.number_or("run.missing", 3.0) == 3.0);
  CHECK(cfg.entries().front().first == "experiment.command");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_string("[experiment]\ncommand = nope\nseed = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[experiment]\nseed = 1\n"), ConfigError);
  auto no_seed = ExperimentConfig::from_string("[experiment]\ncommand = subordinate\n");
  CHECK_THROWS_AS((void)no_seed.seed(), ConfigError);
  no_seed.override_seed(9);
  CHECK(no_seed.seed() == 9);
  const auto bad_kind = ExperimentConfig::from_string(
      "[experiment]\ncommand = subordinate\nseed = 1\n[generator]\nkind = moebius\n");
  CHECK_THROWS_AS((void)bad_kind.generator(), ConfigError);
  const auto bad_profile = ExperimentConfig::from_string(
      "[experiment]\ncommand = rate-from-profile\nseed = 1\n[profile]\nfamily = gauss\n");
  CHECK_THROWS_AS((void)bad_profile.profile(), ConfigError);
}

TEST_CASE("parallel_for fills every slot once") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += static_cast<int>(i); });
  for (std::size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == static_cast<int>(i));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("certify-nash on the identity with B = 1") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = certify-nash\nseed = 7\n[generator]\nkind = diagonal\n"
      "eigenvalues = 1,1,1,1,1,1\n[rate]\nkind = constant\nvalue = 1\n[run]\nper_family = 30\n");
  RunOptions opts;
  opts.out_dir = scratch("identity");
  const auto out = run(cfg, opts);
  CHECK(out.exit_code == 0);
  const auto inf = csv_column(opts.out_dir / "nash_certificate.csv", "infimum");
  REQUIRE(inf.size() == 1);
  CHECK(std::stod(inf[0]) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(fs::exists(opts.out_dir / "manifest.txt"));
}

TEST_CASE("a violated rate fails with a certificate path") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = certify-nash\nseed = 7\n[generator]\nkind = diagonal\n"
      "eigenvalues = 1,1,1\n[rate]\nkind = constant\nvalue = 2\n[run]\nper_family = 10\n");
  RunOptions opts;
  opts.out_dir = scratch("violated");
  const auto out = run(cfg, opts);
  CHECK(out.exit_code == 1);
  CHECK(fs::exists(out.certificate));
}

TEST_CASE("config errors map to exit status 2") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = subordinate\n[generator]\nkind = cycle\nsize = 8\n");
  RunOptions opts;
  opts.out_dir = scratch("no_seed");
  CHECK(run(cfg, opts).exit_code == 2);
}

TEST_CASE("subordinate on a 64-cycle at alpha 1/2") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = subordinate\nseed = 11\n[generator]\nkind = cycle\nsize = 64\n"
      "[run]\nalpha = 0.5\nt = 0.1, 1, 10\n");
  RunOptions opts;
  opts.out_dir = scratch("subordinate");
  opts.jobs = 2;
  REQUIRE(run(cfg, opts).exit_code == 0);
  for (const auto& v : csv_column(opts.out_dir / "subordinate.csv", "route_deviation"))
    CHECK(std::stod(v) <= 1e-6);
}

TEST_CASE("reruns are byte-identical and independent of --jobs") {
  const std::string text =
      "[experiment]\ncommand = jensen-check\nseed = 5\n[generator]\nkind = cycle\nsize = 12\n"
      "[run]\nsamples = 200\n";
  auto cfg = ExperimentConfig::from_string(text);
  RunOptions a, b;
  a.out_dir = scratch("det_a");
  b.out_dir = scratch("det_b");
  b.jobs = 3;
  REQUIRE(run(cfg, a).exit_code == 0);
  REQUIRE(run(cfg, b).exit_code == 0);
  CHECK(slurp(a.out_dir / "jensen.csv") == slurp(b.out_dir / "jensen.csv"));
  cfg.override_seed(6);
  RunOptions c;
  c.out_dir = scratch("det_c");
  REQUIRE(run(cfg, c).exit_code == 0);
  CHECK(slurp(a.out_dir / "jensen.csv") != slurp(c.out_dir / "jensen.csv"));
}

TEST_CASE("torus sweep labels the three regimes") {
  const auto cfg = ExperimentConfig::from_string(
      "[experiment]\ncommand = torus-sweep\nseed = 3\n[run]\ngamma = 1\n"
      "alpha = 0.3, 0.5, 0.75\nt = 0.1, 1\n");
  RunOptions opts;
  opts.out_dir = scratch("torus");
  const auto out = run(cfg, opts);
  CHECK(out.exit_code == 0);
  const auto status = csv_column(opts.out_dir / "torus_regimes.csv", "status");
  REQUIRE(status.size() == 3);
  CHECK(status[0] == "divergent");
  CHECK(status[1] == "threshold");
  CHECK(status[2] == "finite");
}

TEST_CASE("a single acceptance criterion") {
  AcceptanceOptions opts;
  opts.out_dir = scratch("acceptance_c8");
  const auto r = run_criterion(8, opts);
  CHECK(r.passed);
  CHECK(summary_line(r).rfind("PASS  8", 0) == 0);
  CHECK(fs::exists(opts.out_dir / "c08_condition_d.csv"));
}
