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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "irsnet/errors.hpp"
#include "irsnet/harness.hpp"
#include "irsnet/ippu.hpp"
#include "test_util.hpp"

namespace irsnet {
namespace {

using testing::test_rng;

RunConfig small_run() {
  RunConfig cfg;
  cfg.system.K = 6;
  cfg.system.M = 8;
  cfg.system.N = 8;
  cfg.system.T_max = 8;
  return cfg;
}

std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(EnergyEfficiency, HandInstance) {
  const RunConfig cfg;
  PowerAllocation one(3);
  one.per_bs[0][0] = 1.0;
  const double denom = 1.2 * 1.0 + 3 * std::pow(10.0, 0.5) + 16 * 0.01 + 32 * 0.01;
  EXPECT_NEAR(energy_efficiency(100.0, one, cfg.energy, cfg.system, true), 100.0 / denom, 1e-12);
  EXPECT_NEAR(100.0 / denom, 100.0 / 11.1668, 1e-3);
  EXPECT_DOUBLE_EQ(energy_efficiency(0.0, one, cfg.energy, cfg.system, true), 0.0);
  EXPECT_NEAR(energy_efficiency(200.0, one, cfg.energy, cfg.system, true),
              2.0 * energy_efficiency(100.0, one, cfg.energy, cfg.system, true), 1e-12);
  const double no_irs = 1.2 + 3 * std::pow(10.0, 0.5) + 0.16;
  EXPECT_NEAR(energy_efficiency(100.0, one, cfg.energy, cfg.system, false), 100.0 / no_irs, 1e-12);
}

TEST(Outage, EdgesAndMonotonicity) {
  const std::vector<std::vector<double>> rates = {{0.5, 2.0, 3.0}, {1.0, 4.0, 0.2}};
  EXPECT_DOUBLE_EQ(outage_probability(rates, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(outage_probability(rates, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(outage_probability(rates, 1.0), 3.0 / 6.0);
  EXPECT_THROW(outage_probability({}, 1.0), std::invalid_argument);

  Rng rng = test_rng(3000);
  std::vector<std::vector<double>> sample(30, std::vector<double>(5));
  for (auto& row : sample) {
    for (double& r : row) r = uniform(rng, 0.0, 8.0);
  }
  double prev = 0.0;
  for (double t = 0.0; t <= 9.0; t += 0.25) {
    const double p = outage_probability(sample, t);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(Outage, AveragesOverTheChannelsOfAScene) {
  const std::vector<std::vector<double>> rates = {{0.0, 4.0}, {2.0, 4.0}, {0.5, 0.5}};
  // Scene 0 means: 1.0 and 4.0; scene 1: 0.5 and 0.5.
  EXPECT_DOUBLE_EQ(outage_probability(rates, 1.0, 2), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(outage_probability(rates, 0.9, 2), 2.0 / 4.0);
}

TEST(Algorithms, TagsRoundTripAndStubsRefuse) {
  for (Algorithm a : {Algorithm::kIppu, Algorithm::kRpbfNbua, Algorithm::kNoIrs}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("greedy"), ConfigError);
  const RunConfig cfg = small_run();
  const Scenario sc = gen_scenario(cfg.system, 1, 0);
  EXPECT_THROW(baseline_pbf_uapc(sc.channels, sc.geom, cfg), OutOfScopeError);
  EXPECT_THROW(baseline_af_relay(sc.channels, sc.geom, cfg), OutOfScopeError);
}

TEST(Baselines, DeterministicAndComplete) {
  const RunConfig cfg = small_run();
  for (Algorithm a : {Algorithm::kRpbfNbua, Algorithm::kNoIrs, Algorithm::kIppu}) {
    const TrialResult x = run_trial(cfg, a, 4, 1);
    const TrialResult y = run_trial(cfg, a, 4, 1);
    SCOPED_TRACE(to_string(a));
    EXPECT_EQ(x.user_rates, y.user_rates);
    ASSERT_TRUE(x.feasible()) << x.failure;
    int served = 0;
    for (int c : x.served_count) {
      EXPECT_GE(c, 1);
      served += c;
    }
    EXPECT_EQ(served, cfg.system.K);
    double total = 0.0;
    for (double r : x.user_rates) total += r;
    EXPECT_NEAR(total, x.R_sum, 1e-9 * std::max(1.0, total));
    EXPECT_GT(x.EE, 0.0);
  }
}

TEST(Baselines, NoIrsUsesTheStrongestBs) {
  const RunConfig cfg = small_run();
  const Scenario sc = gen_scenario(cfg.system, 7, 0);
  const TrialResult r = baseline_no_irs(sc.channels, sc.geom, cfg);
  ASSERT_TRUE(r.feasible()) << r.failure;
  std::vector<int> rssi(cfg.system.K, 0);
  for (int k = 0; k < cfg.system.K; ++k) {
    double gain = sc.channels.blocked_direct.row(k).squaredNorm();
    for (int s = 1; s < cfg.system.S; ++s) {
      const double g = sc.channels.h_d[s].row(k).squaredNorm();
      if (g > gain) {
        gain = g;
        rssi[k] = s;
      }
    }
  }
  const ReflectionState unused = ReflectionState::zeros(cfg.system.N, cfg.system.b);
  const std::vector<int> fixed =
      repair_association(rssi, sc.geom, sc.channels, unused, Link::kBlocked);
  std::vector<int> counts(cfg.system.S, 0);
  for (int s : fixed) ++counts[s];
  EXPECT_EQ(r.served_count, counts);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeTheReport) {
  const RunConfig cfg = small_run();
  const Report a = run_monte_carlo(cfg, 6, Algorithm::kIppu, 9, 1);
  const Report b = run_monte_carlo(cfg, 6, Algorithm::kIppu, 9, 3);
  EXPECT_EQ(trials_csv(a), trials_csv(b));
  EXPECT_EQ(a.summary.trials, 6);
  EXPECT_LE(a.summary.feasible, 6);
  const Report c = run_monte_carlo(cfg, 6, Algorithm::kIppu, 10, 1);
  EXPECT_NE(body(trials_csv(a)), body(trials_csv(c)));
}

TEST(MonteCarlo, SingleTrialIsOneRun) {
  const RunConfig cfg = small_run();
  const Report r = run_monte_carlo(cfg, 1, Algorithm::kIppu, 2, 1);
  ASSERT_EQ(r.results.size(), 1u);
  const TrialResult t = run_trial(cfg, Algorithm::kIppu, 2, 0);
  EXPECT_EQ(r.results[0].user_rates, t.user_rates);
}

TEST(Summary, StatisticsOverFeasibleTrials) {
  std::vector<TrialResult> v(4);
  const double rates[] = {1.0, 3.0, 5.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    v[i].R_sum = rates[i];
    v[i].EE = rates[i] / 10.0;
    v[i].status = i < 3 ? Status::kConverged : Status::kInfeasible;
    v[i].iterations = 2;
  }
  const Summary s = summarize(v);
  EXPECT_EQ(s.trials, 4);
  EXPECT_EQ(s.feasible, 3);
  EXPECT_EQ(s.converged, 3);
  EXPECT_DOUBLE_EQ(s.mean_R_sum, 3.0);
  EXPECT_DOUBLE_EQ(s.median_R_sum, 3.0);
  EXPECT_NEAR(s.stderr_R_sum, 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(s.mean_EE, 0.3, 1e-12);
}

TEST(Report, CsvRoundTrip) {
  const RunConfig cfg = small_run();
  const Report r = run_monte_carlo(cfg, 4, Algorithm::kRpbfNbua, 13, 1);
  const std::string csv = trials_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "seed,algorithm,R_sum,EE,status,rate_0,rate_1,rate_2,rate_3,rate_4,rate_5");
  const std::vector<TrialRow> rows = parse_trials_csv(csv);
  ASSERT_EQ(rows.size(), r.results.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].seed, r.results[i].seed);
    EXPECT_EQ(rows[i].algorithm, "rpbf-nbua");
    EXPECT_EQ(rows[i].R_sum, r.results[i].R_sum);
    EXPECT_EQ(rows[i].EE, r.results[i].EE);
    EXPECT_EQ(rows[i].status, to_string(r.results[i].status));
    EXPECT_EQ(rows[i].user_rates, r.results[i].user_rates);
  }
  EXPECT_THROW(parse_trials_csv("seed,algorithm\n1,2,3\n"), IoError);
}

TEST(Report, EmptyReportIsHeaderOnly) {
  Report r;
  r.cfg = small_run();
  const std::string csv = trials_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_TRUE(parse_trials_csv(csv).empty());
}

TEST(Report, EmitWritesEveryFileAndRepeatsByteForByte) {
  const RunConfig cfg = small_run();
  const auto root = std::filesystem::temp_directory_path() / "irsnet_report_test";
  std::filesystem::remove_all(root);
  const Report a = run_monte_carlo(cfg, 3, Algorithm::kIppu, 17, 1);
  const Report b = run_monte_carlo(cfg, 3, Algorithm::kIppu, 17, 2);
  emit_report(a, (root / "a").string());
  emit_report(b, (root / "b").string());
  for (const char* name :
       {"metadata.yaml", "trials.csv", "cdf.csv", "outage.csv", "coverage.csv", "convergence.csv"}) {
    ASSERT_TRUE(std::filesystem::exists(root / "a" / name)) << name;
    EXPECT_EQ(slurp(root / "a" / name), slurp(root / "b" / name)) << name;
  }
  const std::string meta = slurp(root / "a" / "metadata.yaml");
  EXPECT_NE(meta.find("seed: 17"), std::string::npos);
  EXPECT_NE(meta.find("P_max: 30"), std::string::npos);
  std::filesystem::remove_all(root);
}

TEST(Report, UnwritablePathIsAnIoError) {
  const RunConfig cfg = small_run();
  Report r;
  r.cfg = cfg;
  EXPECT_THROW(emit_report(r, "/proc/irsnet/out"), IoError);
}

TEST(Sweep, OneRowPerValueAndAlgorithm) {
  const RunConfig cfg = small_run();
  const auto dir = std::filesystem::temp_directory_path() / "irsnet_sweep_test";
  std::filesystem::remove_all(dir);
  const std::string csv = run_sweep(cfg, "b", {"1", "2"},
                                    {Algorithm::kIppu, Algorithm::kNoIrs}, 2, 3, dir.string(), 1);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(slurp(dir / "sweep_b.csv"), csv);
  EXPECT_THROW(run_sweep(cfg, "Q", {"1"}, {Algorithm::kIppu}, 1, 3, dir.string(), 1), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Trials, InfeasibleTrialsReportZeroRates) {
  RunConfig cfg = small_run();
  cfg.system.R_min = 30.0;  // unreachable floor
  const TrialResult r = run_trial(cfg, Algorithm::kIppu, 1, 0);
  EXPECT_FALSE(r.feasible());
  EXPECT_FALSE(r.failure.empty());
  EXPECT_EQ(r.user_rates, std::vector<double>(cfg.system.K, 0.0));
  EXPECT_DOUBLE_EQ(r.R_sum, 0.0);
}

}  // namespace
}  // namespace irsnet
