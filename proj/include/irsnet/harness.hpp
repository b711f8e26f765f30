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

#ifndef IRSNET_HARNESS_HPP_
#define IRSNET_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "irsnet/channel.hpp"
#include "irsnet/config.hpp"
#include "irsnet/ippu.hpp"

namespace irsnet {

enum class Algorithm { kIppu, kRpbfNbua, kNoIrs, kPbfUapc, kAfRelay };

std::string to_string(Algorithm a);
// Accepts ippu, rpbf-nbua, no-irs, pbf-uapc, af-relay.
Algorithm parse_algorithm(const std::string& tag);

struct Scenario {
  Geometry geom;
  ChannelSet channels;
  std::uint64_t channel_seed = 0;
};

// K users uniform in the configured disk; fixed BS and IRS positions.
Geometry gen_geometry(const SystemConfig& cfg, Rng& rng);

// Trial `trial` of a run: the user drop comes from scene trial / channels_per_scene
// and the channels from the trial itself, both derived from master_seed.
Scenario gen_scenario(const SystemConfig& cfg, std::uint64_t master_seed, int trial);

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;  // channel seed of the trial
  Algorithm algorithm = Algorithm::kIppu;
  Status status = Status::kInfeasible;
  double R_sum = 0.0;
  double EE = 0.0;
  std::vector<double> user_rates;  // zero for every user of an infeasible trial
  std::vector<int> served_count;   // per BS
  std::vector<double> bs_mean_rate;
  int iterations = 0;
  std::vector<double> rate_trace;
  std::string failure;

  bool feasible() const { return status != Status::kInfeasible; }
};

// Random phases, nearest-BS association and full-budget water-filling.
TrialResult baseline_rpbf_nbua(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg,
                               Rng& rng);
// No IRS: the assisted BS reaches users over blocked NLOS links, users pick
// the strongest BS, and every BS water-fills its full budget.
TrialResult baseline_no_irs(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg);
// Not reproduced; both throw OutOfScopeError.
TrialResult baseline_pbf_uapc(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg);
TrialResult baseline_af_relay(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg);

// R_sum / (eta sum p + S P_BS + K P_u + N P_n); the IRS term is dropped when with_irs is false.
double energy_efficiency(double R_sum, const PowerAllocation& powers, const EnergyModel& model,
                         const SystemConfig& cfg, bool with_irs);

// Fraction of (scene, user) samples whose rate, averaged over the
// channels_per_scene consecutive trials of a scene, is at most R_min
// (with 1e-9 bits/s/Hz of slack for rates pinned to the floor).
double outage_probability(const std::vector<std::vector<double>>& user_rates, double R_min,
                          int channels_per_scene = 1);

TrialResult run_trial(const RunConfig& cfg, Algorithm algorithm, std::uint64_t master_seed,
                      int trial);

struct Summary {
  int trials = 0;
  int feasible = 0;
  int converged = 0;
  double mean_R_sum = 0.0;    // over feasible trials
  double stderr_R_sum = 0.0;  // standard error of that mean
  double median_R_sum = 0.0;
  double mean_EE = 0.0;
  double mean_iterations = 0.0;
};

struct Report {
  RunConfig cfg;
  Algorithm algorithm = Algorithm::kIppu;
  std::uint64_t seed = 0;
  std::vector<TrialResult> results;  // ordered by trial index
  Summary summary;
};

Summary summarize(const std::vector<TrialResult>& results);

// Runs `trials` trials on `threads` workers (0 picks the hardware count). The
// report does not depend on the thread count.
Report run_monte_carlo(const RunConfig& cfg, int trials, Algorithm algorithm,
                       std::uint64_t master_seed, int threads = 0);

// R_min thresholds of the outage curve: 0, 1, ..., 9 bits/s/Hz.
std::vector<double> outage_grid();

// Writes metadata.yaml, trials.csv, cdf.csv, outage.csv, coverage.csv and
// convergence.csv under dir, creating it if needed. Throws IoError.
void emit_report(const Report& report, const std::string& dir);

std::string trials_csv(const Report& report);

struct TrialRow {
  std::uint64_t seed = 0;
  std::string algorithm;
  double R_sum = 0.0;
  double EE = 0.0;
  std::string status;
  std::vector<double> user_rates;
};

// Parses the text written by trials_csv. Throws IoError on malformed input.
std::vector<TrialRow> parse_trials_csv(const std::string& text);

// Re-runs each algorithm for every value of one parameter (Pmax, M, K, N, b
// or Rmin) and writes sweep_<param>.csv under dir. Returns the CSV text.
std::string run_sweep(const RunConfig& cfg, const std::string& param,
                      const std::vector<std::string>& values,
                      const std::vector<Algorithm>& algorithms, int trials,
                      std::uint64_t master_seed, const std::string& dir, int threads = 0);

}  // namespace irsnet

#endif  // IRSNET_HARNESS_HPP_
