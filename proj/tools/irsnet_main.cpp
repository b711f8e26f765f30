// Copyright 2026 The irsnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "irsnet/config.hpp"
#include "irsnet/errors.hpp"
#include "irsnet/harness.hpp"
#include "irsnet/validate.hpp"

namespace {

irsnet::RunConfig resolve(const std::string& path, std::optional<std::uint64_t> seed) {
  irsnet::RunConfig cfg = path.empty() ? irsnet::RunConfig{} : irsnet::load_config_file(path);
  if (seed) cfg.system.seed = *seed;
  cfg.system.validate();
  cfg.energy.validate();
  return cfg;
}

void print_summary(const irsnet::Report& r) {
  const irsnet::Summary& s = r.summary;
  fmt::print("{}: {} trials, {} feasible, {} converged\n", irsnet::to_string(r.algorithm), s.trials,
             s.feasible, s.converged);
  fmt::print("  mean R_sum {:.4f} bits/s/Hz (stderr {:.4f}), median {:.4f}\n", s.mean_R_sum,
             s.stderr_R_sum, s.median_R_sum);
  fmt::print("  mean EE {:.4f} bits/s/Hz/W, mean iterations {:.2f}\n", s.mean_EE,
             s.mean_iterations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint IRS phase, power and user-association optimization for multi-BS mmWave "
               "downlinks, with Monte Carlo evaluation."};
  app.require_subcommand(1);
  app.footer(irsnet::config_keys_help());

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int trials = 200;
  int threads = 0;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run one algorithm over seeded Monte Carlo trials");
  std::string algo = "ippu";
  run->add_option("--config", config_path, "Flat YAML config file (keys listed below)")
      ->check(CLI::ExistingFile);
  run->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed (overrides the config key)");
  run->add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"ippu", "rpbf-nbua", "no-irs", "pbf-uapc", "af-relay"}));
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  auto* sweep = app.add_subcommand("sweep", "Re-run algorithms across values of one parameter");
  std::string param;
  std::vector<std::string> values;
  std::vector<std::string> algos{"ippu", "rpbf-nbua", "no-irs"};
  sweep->add_option("--param", param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"Pmax", "M", "K", "N", "b", "Rmin"}));
  sweep->add_option("--values", values, "Values in config-file units (Pmax in dBm)")
      ->required();
  sweep->add_option("--algo", algos, "Algorithms to compare")
      ->check(CLI::IsMember({"ippu", "rpbf-nbua", "no-irs"}));
  sweep->add_option("--config", config_path, "Flat YAML config file")->check(CLI::ExistingFile);
  sweep->add_option("--trials", trials, "Trials per point")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "Master seed (overrides the config key)");
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  auto* validate = app.add_subcommand("validate", "Check every optimizer against reference solvers");
  std::uint64_t validate_seed = 1;
  int instances = 50;
  validate->add_option("--seed", validate_seed, "Seed for the random instances");
  validate->add_option("--instances", instances, "Instances per check")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const irsnet::RunConfig cfg = resolve(config_path, seed);
      const irsnet::Report report = irsnet::run_monte_carlo(
          cfg, trials, irsnet::parse_algorithm(algo), cfg.system.seed, threads);
      irsnet::emit_report(report, out_dir);
      print_summary(report);
      fmt::print("wrote {}\n", out_dir);
    } else if (*sweep) {
      const irsnet::RunConfig cfg = resolve(config_path, seed);
      std::vector<irsnet::Algorithm> list;
      for (const auto& a : algos) list.push_back(irsnet::parse_algorithm(a));
      std::cout << irsnet::run_sweep(cfg, param, values, list, trials, cfg.system.seed, out_dir,
                                     threads);
    } else if (*validate) {
      bool ok = true;
      for (const auto& c : irsnet::run_validation(validate_seed, instances)) {
        fmt::print("{} {} ({})\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
        ok = ok && c.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const irsnet::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
